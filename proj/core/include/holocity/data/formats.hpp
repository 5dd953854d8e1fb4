#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holocity/geo/geometry.hpp"
#include "holocity/sdm/entity.hpp"
#include "holocity/traffic/traffic.hpp"

namespace holocity::data {

struct ScheduleSpec {
  Millis departure = 0;
  std::vector<double> leg_speeds_kmh;
};

// One feature of a FeatureCollection document. Properties understood:
//   kind (required), id (required, local id), layer, height_m, base_alt,
//   lod_min_zoom, level + parent (AdminRegion), schedule {departure,
//   speeds_kmh} (SubwayLine), attrs {...} or flattened "attrs.<key>".
struct FeatureRecord {
  EntityId id;
  geo::Geometry geometry;
  std::optional<std::string> layer;
  double height_m = 0.0;
  double base_alt = 0.0;
  std::optional<int> lod_min_zoom;
  Attributes attrs;
  std::optional<AdminLevel> admin_level;
  std::optional<EntityId> admin_parent;
  std::optional<ScheduleSpec> schedule;
  std::size_t source_index = 0;  // position in the parsed features array
};

struct FeatureDiagnostic {
  std::size_t index = 0;  // position in the features array
  std::string id;         // as written, may be empty
  std::string reason;
};

struct FeatureParseResult {
  std::vector<FeatureRecord> features;
  std::vector<FeatureDiagnostic> rejected;
};

// Whole-document problems (not JSON, not a FeatureCollection, features not an
// array) throw Error(ParseError). Individual bad features are reported in
// `rejected` and do not affect the others.
FeatureParseResult parse_feature_collection(std::string_view text);

// Deterministic writer: one feature per line, coordinates rounded to 7
// decimal places, properties with sorted keys.
std::string write_feature_collection(const std::vector<FeatureRecord>& features);

double round7(double degrees) noexcept;

// {"segment_id": ..., "speed_kmh": ..., "t": ...}
std::string encode_sample_line(const traffic::CongestionSample& sample);
traffic::CongestionSample decode_sample_line(std::string_view line);

}  // namespace holocity::data
