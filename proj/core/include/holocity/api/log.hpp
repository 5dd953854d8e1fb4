#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <thread>

#include "holocity/sdm/store.hpp"

namespace holocity::api {

// Lines reach the kernel (write(2)) before append returns, so they survive a
// killed process. fsync is batched: after `batch_events` lines or
// `batch_interval` of dirtiness, whichever comes first.
struct FlushPolicy {
  std::size_t batch_events = 64;
  std::chrono::milliseconds batch_interval{100};
};

// Returns true to make the append fail before anything is written.
using FaultInjector = std::function<bool(std::string_view line)>;

// Append-only file of newline-terminated lines. Thread-safe.
class AppendLog {
 public:
  // Creates the file if needed. Throws Error(StorageFailure).
  explicit AppendLog(std::filesystem::path path, FlushPolicy policy = {});
  ~AppendLog();
  AppendLog(const AppendLog&) = delete;
  AppendLog& operator=(const AppendLog&) = delete;

  // All lines or none: a short write is rolled back by truncation. Throws
  // Error(StorageFailure).
  void append(std::span<const std::string> lines);
  void append(const std::string& line) { append(std::span<const std::string>(&line, 1)); }

  void sync();
  void set_fault_injector(FaultInjector injector);

  const std::filesystem::path& path() const noexcept { return path_; }
  std::uint64_t lines_appended() const noexcept { return appended_; }

 private:
  void flusher();

  std::filesystem::path path_;
  FlushPolicy policy_;
  int fd_ = -1;
  std::mutex mu_;
  std::condition_variable cv_;
  FaultInjector fault_;
  std::size_t unsynced_ = 0;
  std::uint64_t appended_ = 0;
  bool stop_ = false;
  std::thread flusher_;
};

struct RecoveryReport {
  std::size_t lines = 0;           // complete lines consumed
  bool dropped_torn_tail = false;  // a final partial or unreadable line was removed
  std::uint64_t truncated_bytes = 0;
};

// Feeds every line of the file to `consume`. A final line that is missing
// its newline or that `consume` rejects with Error(ParseError) is dropped and,
// when `repair` is set, cut off the file. A rejected line anywhere else
// throws Error(CorruptLog). A missing file counts as empty.
RecoveryReport scan_log(const std::filesystem::path& path, const std::function<void(std::string_view)>& consume,
                        bool repair);

// Replays an event log into a fresh store (see scan_log). Events that decode
// but do not apply also raise CorruptLog.
Store recover(const std::filesystem::path& path, RecoveryReport* report = nullptr, bool repair = true);

}  // namespace holocity::api
