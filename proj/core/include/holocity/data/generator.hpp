#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "holocity/data/formats.hpp"
#include "holocity/geo/geometry.hpp"
#include "holocity/sdm/event.hpp"
#include "holocity/traffic/traffic.hpp"

namespace holocity::data {

inline constexpr Millis kGenerationEpoch = 1'700'000'000'000;

struct GenCounts {
  std::int64_t districts = 4;
  std::int64_t streets_per_district = 4;
  std::int64_t communities_per_street = 4;
  std::int64_t grids_per_community = 4;
  std::int64_t buildings = 1000;
  std::int64_t households_per_building = 2;
  double persons_per_household = 2.5;
  std::int64_t rooms_per_house = 2;
  std::int64_t companies = 20;
  std::int64_t road_segments = 200;
  std::int64_t pipeline_segments = 150;
  std::int64_t subway_lines = 4;
  std::int64_t power_nodes = 120;
  std::int64_t urban_events = 20;
};

struct GenSpec {
  std::uint64_t seed = 42;
  GenCounts counts;
  geo::BBox bbox{113.90, 22.50, 114.10, 22.62};

  // Throws Error(InvalidSpec) for negative counts, an empty hierarchy level,
  // persons_per_household < 0 or a degenerate bbox.
  void validate() const;

  // Applies "key=value,key=value" overrides. Unknown keys and malformed
  // numbers throw Error(InvalidSpec).
  void apply_counts(std::string_view text);
};

// Parses "minlon,minlat,maxlon,maxlat". Throws Error(InvalidSpec).
geo::BBox parse_bbox_text(std::string_view text);

struct GeneratedCity {
  std::vector<EventRecord> events;
  std::vector<FeatureRecord> features;  // admin regions first, parent-first
  std::vector<traffic::CongestionSample> samples;
  Millis end_time = 0;  // last event or sample timestamp
};

// Same spec, same output. Persons number round(houses * persons_per_household):
// one per house first, the rest spread at random.
GeneratedCity generate_city(const GenSpec& spec);

inline constexpr std::string_view kEventLogFile = "events.log";
inline constexpr std::string_view kGeometryFile = "geometry.geojson";
inline constexpr std::string_view kTrafficFile = "traffic.ndjson";

// Writes events.log, geometry.geojson and traffic.ndjson into `dir`
// (created if needed). Throws Error(StorageFailure) on I/O errors.
void write_city(const GeneratedCity& city, const std::filesystem::path& dir);

}  // namespace holocity::data
