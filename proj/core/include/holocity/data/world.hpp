#pragma once

#include <filesystem>
#include <map>
#include <string_view>
#include <vector>

#include "holocity/data/formats.hpp"
#include "holocity/scene/catalog.hpp"
#include "holocity/sdm/event.hpp"
#include "holocity/traffic/route.hpp"
#include "holocity/traffic/traffic.hpp"

namespace holocity::data {

// Geometry-side state of a city: scene objects and the admin partition
// (through the catalog's index), registered road segments and subway routes.
struct CityWorld {
  scene::SceneCatalog catalog;
  traffic::TrafficStore traffic;
  std::map<EntityId, traffic::RouteSchedule> routes;
};

// Default layer and lod are filled in from the kind and footprint area.
scene::SceneObject scene_object_for(const FeatureRecord& feature);

// Admin regions go to the index's admin table (parents must already be
// present); everything else becomes a scene object. Road segments are also
// registered for traffic and scheduled subway lines become routes.
void add_feature(CityWorld& world, const FeatureRecord& feature);

// Checks a feature the way add_feature would, without a world.
void validate_feature(const FeatureRecord& feature);

struct ImportReport {
  std::size_t accepted = 0;
  std::vector<FeatureDiagnostic> rejected;
};

struct ImportResult {
  ImportReport report;
  std::vector<FeatureRecord> features;  // accepted, admin regions ordered parent-first
};

// Throws Error(ParseError) when the document itself is malformed.
ImportResult import_document(std::string_view text);
ImportResult import_dataset(const std::filesystem::path& path);

// Create events (ids first_id, first_id + 1, ...) for accepted features, then
// LocatedIn relations from admin regions to their parents.
std::vector<EventRecord> events_for_features(const std::vector<FeatureRecord>& features, std::uint64_t first_id,
                                             Millis t, const std::string& source);

std::string read_file(const std::filesystem::path& path);

}  // namespace holocity::data
