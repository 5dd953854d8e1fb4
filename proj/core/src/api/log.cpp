#include "holocity/api/log.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "holocity/error.hpp"
#include "holocity/sdm/event_codec.hpp"

namespace holocity::api {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::StorageFailure, what + ": " + std::strerror(errno));
}

}  // namespace

AppendLog::AppendLog(std::filesystem::path path, FlushPolicy policy) : path_(std::move(path)), policy_(policy) {
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
  }
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) fail("cannot open " + path_.string());
  flusher_ = std::thread([this] { flusher(); });
}

AppendLog::~AppendLog() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  flusher_.join();
  if (fd_ >= 0) {
    ::fsync(fd_);
    ::close(fd_);
  }
}

void AppendLog::set_fault_injector(FaultInjector injector) {
  std::lock_guard lock(mu_);
  fault_ = std::move(injector);
}

void AppendLog::append(std::span<const std::string> lines) {
  std::string buf;
  for (const auto& l : lines) {
    buf += l;
    buf += '\n';
  }
  std::unique_lock lock(mu_);
  if (fault_) {
    for (const auto& l : lines) {
      if (fault_(l)) throw Error(ErrorCode::StorageFailure, "injected write failure");
    }
  }
  struct stat st {};
  if (::fstat(fd_, &st) != 0) fail("cannot stat " + path_.string());
  const off_t before = st.st_size;
  std::size_t done = 0;
  while (done < buf.size()) {
    const ssize_t n = ::write(fd_, buf.data() + done, buf.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      const int saved = errno;
      if (::ftruncate(fd_, before) != 0) {
        // Leave the torn tail for recovery to drop.
      }
      errno = saved;
      fail("write to " + path_.string() + " failed");
    }
    done += static_cast<std::size_t>(n);
  }
  appended_ += lines.size();
  const bool was_clean = unsynced_ == 0;
  unsynced_ += lines.size();
  if (unsynced_ >= policy_.batch_events) {
    if (::fdatasync(fd_) != 0) fail("fsync of " + path_.string() + " failed");
    unsynced_ = 0;
  } else if (was_clean) {
    cv_.notify_all();
  }
}

void AppendLog::sync() {
  std::lock_guard lock(mu_);
  if (::fdatasync(fd_) != 0) fail("fsync of " + path_.string() + " failed");
  unsynced_ = 0;
}

void AppendLog::flusher() {
  std::unique_lock lock(mu_);
  while (!stop_) {
    cv_.wait(lock, [&] { return stop_ || unsynced_ > 0; });
    if (stop_) break;
    cv_.wait_for(lock, policy_.batch_interval, [&] { return stop_; });
    if (unsynced_ > 0) {
      ::fdatasync(fd_);
      unsynced_ = 0;
    }
  }
}

RecoveryReport scan_log(const std::filesystem::path& path, const std::function<void(std::string_view)>& consume,
                        bool repair) {
  RecoveryReport report;
  if (!std::filesystem::exists(path)) return report;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::StorageFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::uint64_t keep = text.size();
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const bool complete = nl != std::string::npos;
    const auto end = complete ? nl : text.size();
    const bool last = !complete || end + 1 == text.size();
    const std::string_view line(text.data() + pos, end - pos);
    ++line_no;
    if (!complete) {
      report.dropped_torn_tail = true;
      keep = pos;
      break;
    }
    try {
      consume(line);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParseError) throw;
      if (!last) {
        throw Error(ErrorCode::CorruptLog, path.string() + " line " + std::to_string(line_no) + ": " + e.what());
      }
      report.dropped_torn_tail = true;
      keep = pos;
      break;
    }
    ++report.lines;
    pos = end + 1;
  }
  report.truncated_bytes = text.size() - keep;
  if (repair && report.dropped_torn_tail) {
    std::error_code ec;
    std::filesystem::resize_file(path, keep, ec);
    if (ec) throw Error(ErrorCode::StorageFailure, "cannot truncate " + path.string() + ": " + ec.message());
  }
  return report;
}

Store recover(const std::filesystem::path& path, RecoveryReport* report, bool repair) {
  Store store;
  std::size_t line_no = 0;
  auto r = scan_log(
      path,
      [&](std::string_view line) {
        ++line_no;
        const auto event = decode_event_line(line);
        try {
          store.apply_event(event);
        } catch (const Error& e) {
          throw Error(ErrorCode::CorruptLog, path.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
      },
      repair);
  if (report != nullptr) *report = r;
  return store;
}

}  // namespace holocity::api
