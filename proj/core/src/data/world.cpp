#include "holocity/data/world.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "holocity/error.hpp"

namespace holocity::data {

scene::SceneObject scene_object_for(const FeatureRecord& f) {
  scene::SceneObject obj;
  obj.entity_id = f.id;
  obj.layer_id = f.layer.value_or(scene::default_layer_for(f.id.kind()));
  obj.geometry = f.geometry;
  obj.base_alt = f.base_alt;
  obj.height_m = f.height_m;
  obj.lod_min_zoom = f.lod_min_zoom.value_or(scene::lod_min_zoom(geo::area_m2_of(f.geometry), f.id.kind()));
  return obj;
}

void validate_feature(const FeatureRecord& f) {
  if (f.id.kind() == EntityKind::AdminRegion) {
    if (!std::holds_alternative<geo::Footprint>(f.geometry) || !f.admin_level) {
      throw Error(ErrorCode::InvalidGeometry, f.id.str() + " needs a polygon and a level");
    }
    return;
  }
  scene::validate_scene_object(scene_object_for(f));
  if (f.id.kind() == EntityKind::RoadSegment && !std::holds_alternative<geo::Polyline>(f.geometry)) {
    throw Error(ErrorCode::InvalidGeometry, f.id.str() + " road segments are polylines");
  }
  if (f.schedule) {
    const auto* line = std::get_if<geo::Polyline>(&f.geometry);
    if (line == nullptr) throw Error(ErrorCode::InvalidGeometry, f.id.str() + " schedule needs a polyline");
    traffic::RouteSchedule(f.id, *line, f.schedule->departure, f.schedule->leg_speeds_kmh);
  }
}

void add_feature(CityWorld& world, const FeatureRecord& f) {
  validate_feature(f);
  if (f.id.kind() == EntityKind::AdminRegion) {
    world.catalog.index().add_admin_region(f.id, *f.admin_level, f.admin_parent,
                                           std::get<geo::Footprint>(f.geometry));
    return;
  }
  world.catalog.add(scene_object_for(f));
  if (f.id.kind() == EntityKind::RoadSegment) {
    world.traffic.register_segment(f.id, std::get<geo::Polyline>(f.geometry));
  }
  if (f.schedule) {
    world.routes.insert_or_assign(f.id, traffic::RouteSchedule(f.id, std::get<geo::Polyline>(f.geometry),
                                                               f.schedule->departure, f.schedule->leg_speeds_kmh));
  }
}

ImportResult import_document(std::string_view text) {
  auto parsed = parse_feature_collection(text);
  ImportResult result;
  result.report.rejected = std::move(parsed.rejected);

  // Admin regions must be registered parent-first; keep document order
  // otherwise.
  std::stable_sort(parsed.features.begin(), parsed.features.end(), [](const FeatureRecord& a, const FeatureRecord& b) {
    const int la = a.admin_level ? static_cast<int>(*a.admin_level) : 4;
    const int lb = b.admin_level ? static_cast<int>(*b.admin_level) : 4;
    return la < lb;
  });
  std::set<EntityId> regions;
  for (auto& f : parsed.features) {
    try {
      validate_feature(f);
      if (f.admin_parent && !regions.contains(*f.admin_parent)) {
        throw Error(ErrorCode::UnknownRegion, "parent " + f.admin_parent->str() + " not in document");
      }
      if (f.admin_level) regions.insert(f.id);
      result.features.push_back(std::move(f));
    } catch (const Error& e) {
      result.report.rejected.push_back({f.source_index, std::string(f.id.local_id()), e.what()});
    }
  }
  result.report.accepted = result.features.size();
  std::sort(result.report.rejected.begin(), result.report.rejected.end(),
            [](const FeatureDiagnostic& a, const FeatureDiagnostic& b) { return a.index < b.index; });
  return result;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ImportResult import_dataset(const std::filesystem::path& path) { return import_document(read_file(path)); }

std::vector<EventRecord> events_for_features(const std::vector<FeatureRecord>& features, std::uint64_t first_id,
                                             Millis t, const std::string& source) {
  std::vector<EventRecord> events;
  std::uint64_t next = first_id;
  for (const auto& f : features) {
    Attributes attrs = f.attrs;
    if (f.admin_level) attrs["level"] = std::string(admin_level_name(*f.admin_level));
    events.push_back(EventRecord{next++, t, f.id, EventType::Create, std::move(attrs), source});
  }
  for (const auto& f : features) {
    if (!f.admin_parent) continue;
    events.push_back(EventRecord{next++, t, f.id, EventType::Relate,
                                 RelationPayload{Predicate::LocatedIn, *f.admin_parent}, source});
  }
  return events;
}

}  // namespace holocity::data
