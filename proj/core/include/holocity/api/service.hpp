#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "holocity/analytics/stats.hpp"
#include "holocity/api/log.hpp"
#include "holocity/data/world.hpp"
#include "holocity/error.hpp"
#include "holocity/sdm/store.hpp"

namespace holocity::api {

struct ApiRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

int http_status_for(ErrorCode code) noexcept;

// Category map used by the statistics endpoints: "age" is binned into
// 0-17, 18-34, 35-59 and 60+; every other attribute maps values to
// themselves.
analytics::CategoryMap default_category_map(const std::string& attribute);

struct ServiceConfig {
  std::filesystem::path log_path;
  // Defaults: geometry.geojson and traffic.ndjson next to the log.
  std::optional<std::filesystem::path> geometry_path;
  std::optional<std::filesystem::path> traffic_path;
  FlushPolicy flush;
};

// Request router over the store, the scene catalog and the traffic store.
// Reads share a lock; writes take it exclusively and run validate, persist,
// apply in that order, so a failed write leaves no trace in memory.
class Service {
 public:
  // Recovers the log (repairing a torn tail), loads the geometry sidecar if
  // present and replays persisted traffic samples.
  static std::unique_ptr<Service> open(const ServiceConfig& config);

  Service(Store store, data::CityWorld world, std::unique_ptr<AppendLog> event_log,
          std::unique_ptr<AppendLog> traffic_log);

  ApiResponse route_request(const ApiRequest& request);

  void set_fault_injector(FaultInjector injector);

  // Runs f(store, world) under the shared lock.
  template <typename F>
  auto read(F&& f) const {
    std::shared_lock lock(mu_);
    return f(static_cast<const Store&>(store_), static_cast<const data::CityWorld&>(world_));
  }

  const RecoveryReport& recovery() const noexcept { return recovery_; }

 private:
  ApiResponse get(const ApiRequest& request);
  ApiResponse post(const ApiRequest& request);

  mutable std::shared_mutex mu_;
  Store store_;
  data::CityWorld world_;
  std::unique_ptr<AppendLog> event_log_;
  std::unique_ptr<AppendLog> traffic_log_;
  RecoveryReport recovery_;
};

}  // namespace holocity::api
