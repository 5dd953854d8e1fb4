// holocity: generate, import, serve and inspect synthetic city datasets.
//
// Exit status: 0 on success, 1 for usage errors, 2 for data errors.

#include <pthread.h>
#include <signal.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "holocity/analytics/region.hpp"
#include "holocity/analytics/stats.hpp"
#include "holocity/api/http_server.hpp"
#include "holocity/api/log.hpp"
#include "holocity/api/service.hpp"
#include "holocity/data/generator.hpp"
#include "holocity/data/world.hpp"
#include "holocity/error.hpp"
#include "holocity/sdm/event_codec.hpp"

namespace fs = std::filesystem;
using namespace holocity;

namespace {

constexpr int kExitData = 2;

int cmd_gen(std::uint64_t seed, const fs::path& out, const std::string& counts, const std::string& bbox) {
  data::GenSpec spec;
  spec.seed = seed;
  spec.apply_counts(counts);
  if (!bbox.empty()) spec.bbox = data::parse_bbox_text(bbox);
  const auto city = data::generate_city(spec);
  data::write_city(city, out);
  std::cout << "wrote " << city.events.size() << " events, " << city.features.size() << " features, "
            << city.samples.size() << " traffic samples to " << out.string() << "\n";
  return 0;
}

// Appends Create events for the accepted features to the log and merges them
// into the geometry sidecar next to it.
int cmd_import(const fs::path& input, const fs::path& log_path) {
  auto result = data::import_dataset(input);
  std::cout << "accepted " << result.features.size() << ", rejected " << result.report.rejected.size() << "\n";
  for (const auto& r : result.report.rejected) {
    std::cout << "  feature " << r.index << (r.id.empty() ? "" : " (" + r.id + ")") << ": " << r.reason << "\n";
  }
  if (log_path.empty()) return 0;

  Store store = api::recover(log_path);
  const auto sidecar = log_path.parent_path() / data::kGeometryFile;
  std::vector<data::FeatureRecord> merged;
  if (fs::exists(sidecar)) merged = data::import_dataset(sidecar).features;

  std::vector<data::FeatureRecord> fresh;
  std::size_t skipped = 0;
  for (auto& f : result.features) {
    if (store.contains(f.id)) {
      ++skipped;
      continue;
    }
    fresh.push_back(std::move(f));
  }
  const Millis t = std::max<Millis>(store.latest_timestamp(),
                                    std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::system_clock::now().time_since_epoch())
                                        .count());
  const auto events = data::events_for_features(fresh, store.last_event_id() + 1, t, "import:" + input.filename().string());
  for (const auto& e : events) store.apply_event(e);
  {
    api::AppendLog log(log_path);
    std::vector<std::string> lines;
    lines.reserve(events.size());
    for (const auto& e : events) lines.push_back(encode_event_line(e));
    if (!lines.empty()) log.append(lines);
    log.sync();
  }
  merged.insert(merged.end(), fresh.begin(), fresh.end());
  std::ofstream(sidecar, std::ios::binary | std::ios::trunc) << data::write_feature_collection(merged);
  std::cout << "appended " << events.size() << " events to " << log_path.string();
  if (skipped > 0) std::cout << " (" << skipped << " ids already present)";
  std::cout << "\n";
  return 0;
}

int cmd_serve(const fs::path& log_path, const std::string& host, int port) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  api::ServiceConfig config;
  config.log_path = log_path;
  auto service = api::Service::open(config);
  const auto& rec = service->recovery();
  api::HttpServer server(*service);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return kExitData;
  }
  std::cout << "recovered " << rec.lines << " events" << (rec.dropped_torn_tail ? " (dropped a torn final line)" : "")
            << "\nlistening on http://" << host << ":" << bound << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  const bool ok = server.run();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return ok ? 0 : kExitData;
}

int cmd_replay_bench(const fs::path& log_path, int repeat) {
  std::vector<EventRecord> events;
  api::scan_log(log_path, [&](std::string_view line) { events.push_back(decode_event_line(line)); }, false);
  double best = 0.0;
  for (int i = 0; i < repeat; ++i) {
    const auto start = std::chrono::steady_clock::now();
    Store store;
    for (const auto& e : events) store.apply_event(e);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double rate = secs > 0 ? static_cast<double>(events.size()) / secs : 0.0;
    best = std::max(best, rate);
    std::printf("run %d: %zu events in %.3f s (%.0f events/s)\n", i + 1, events.size(), secs, rate);
  }
  std::printf("best: %.0f events/s\n", best);
  return 0;
}

int cmd_stats(const fs::path& log_path, const std::string& attr, const std::string& kind_text,
              const std::string& region, std::optional<Millis> at) {
  const auto kind = parse_kind(kind_text);
  if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown kind '" + kind_text + "'");
  Store store = api::recover(log_path, nullptr, false);
  data::CityWorld world;
  const auto sidecar = log_path.parent_path() / data::kGeometryFile;
  if (fs::exists(sidecar)) {
    for (const auto& f : data::import_dataset(sidecar).features) data::add_feature(world, f);
  }
  const Millis t = at.value_or(store.latest_timestamp());
  std::vector<EntityId> ids;
  if (!region.empty()) {
    ids = analytics::select_entities(store, world.catalog.index(), analytics::parse_region(region), *kind, t);
  } else {
    for (auto& id : store.entity_ids(*kind))
      if (store.is_live(id, t)) ids.push_back(std::move(id));
  }
  const auto c = analytics::composition(store, ids, attr, api::default_category_map(attr), t);
  std::printf("%s of %zu %s at %lld\n", attr.c_str(), static_cast<std::size_t>(c.total), kind_text.c_str(),
              static_cast<long long>(t));
  for (const auto& cat : c.categories) {
    std::printf("  %-16s %8llu  %6.2f%%\n", cat.label.c_str(), static_cast<unsigned long long>(cat.count),
                cat.fraction * 100.0);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic city data, event log and HTTP service"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::string out = "city";
  std::string counts;
  std::string bbox;
  auto* gen = app.add_subcommand("gen", "Generate a deterministic synthetic city");
  gen->add_option("--seed", seed, "PRNG seed");
  gen->add_option("--out", out, "Output directory");
  gen->add_option("--counts", counts, "Overrides, e.g. buildings=10,households_per_building=2");
  gen->add_option("--bbox", bbox, "minlon,minlat,maxlon,maxlat");

  std::string input;
  std::string log;
  auto* imp = app.add_subcommand("import", "Import a FeatureCollection document");
  imp->add_option("file", input, "FeatureCollection file")->required();
  imp->add_option("--log", log, "Event log to append Create events to");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API over an event log");
  serve->add_option("--log", log, "Event log")->required();
  serve->add_option("--port", port, "TCP port (0 picks a free one)");
  serve->add_option("--host", host, "Listen address");

  int repeat = 3;
  auto* bench = app.add_subcommand("replay-bench", "Measure replay throughput of an event log");
  bench->add_option("--log", log, "Event log")->required();
  bench->add_option("--repeat", repeat, "Number of runs")->check(CLI::PositiveNumber);

  std::string attr;
  std::string kind = "Person";
  std::string region;
  Millis at = 0;
  auto* stats = app.add_subcommand("stats", "Print a composition breakdown");
  stats->add_option("--log", log, "Event log")->required();
  stats->add_option("--attr", attr, "Attribute, e.g. age or education")->required();
  stats->add_option("--kind", kind, "Entity kind");
  stats->add_option("--region", region, "admin:d1/d1s1, community:c, grid:g1,g2 or bbox:...");
  auto* at_opt = stats->add_option("--at", at, "Time in ms since the epoch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (*gen) return cmd_gen(seed, out, counts, bbox);
    if (*imp) return cmd_import(input, log);
    if (*serve) return cmd_serve(log, host, port);
    if (*bench) return cmd_replay_bench(log, repeat);
    if (*stats) return cmd_stats(log, attr, kind, region, at_opt->count() > 0 ? std::optional<Millis>(at) : std::nullopt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 1;
}
