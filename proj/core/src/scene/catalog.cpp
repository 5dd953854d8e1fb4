#include "holocity/scene/catalog.hpp"

#include <cmath>
#include <deque>
#include <set>

#include "holocity/error.hpp"

namespace holocity::scene {

int lod_min_zoom(double area, EntityKind kind) {
  switch (kind) {
    case EntityKind::Building:
    case EntityKind::House:
      if (area >= 1e5) return 11;
      if (area >= 1e4) return 13;
      if (area >= 1e3) return 15;
      return 16;
    case EntityKind::Room: return 18;
    case EntityKind::PipelineSegment: return 15;
    case EntityKind::RoadSegment: return 12;
    case EntityKind::SubwayLine: return 12;
    case EntityKind::PowerNode:
    case EntityKind::PowerEdge: return 14;
    case EntityKind::AdminRegion: return 0;
    case EntityKind::Person:
    case EntityKind::Company:
    case EntityKind::UrbanComponent:
    case EntityKind::UrbanEvent: return 16;
  }
  return 16;
}

std::string default_layer_for(EntityKind kind) {
  switch (kind) {
    case EntityKind::RoadSegment: return "above-ground/roads";
    case EntityKind::PipelineSegment: return "underground/pipelines";
    case EntityKind::SubwayLine: return "underground/subway";
    case EntityKind::PowerNode:
    case EntityKind::PowerEdge: return "networks/power";
    case EntityKind::AdminRegion: return "admin";
    default: return "above-ground/buildings";
  }
}

void validate_scene_object(const SceneObject& object) {
  static const LayerTree kTree = LayerTree::canonical();
  if (!kTree.contains(object.layer_id) || !kTree.is_leaf(object.layer_id)) {
    throw Error(ErrorCode::OrphanLayer, object.entity_id.str() + " references layer '" + object.layer_id + "'");
  }
  if (!(object.height_m >= 0.0) || !std::isfinite(object.height_m) || !std::isfinite(object.base_alt)) {
    throw Error(ErrorCode::InvalidGeometry, object.entity_id.str() + " has an invalid height");
  }
  if (object.lod_min_zoom < 0 || object.lod_min_zoom > kMaxZoom) {
    throw Error(ErrorCode::InvalidGeometry, object.entity_id.str() + " lod_min_zoom out of range");
  }
  if (object.entity_id.kind() == EntityKind::PipelineSegment && object.band() != geo::Band::Below) {
    throw Error(ErrorCode::InvalidGeometry, object.entity_id.str() + " pipeline must be underground");
  }
}

void SceneCatalog::add(SceneObject object) {
  validate_scene_object(object);
  index_.insert(geo::IndexEntry{object.entity_id, object.geometry, object.band()});
  objects_.insert_or_assign(object.entity_id, std::move(object));
}

bool SceneCatalog::remove(const EntityId& id) {
  index_.erase(id);
  return objects_.erase(id) > 0;
}

const SceneObject* SceneCatalog::find(const EntityId& id) const {
  auto it = objects_.find(id);
  return it == objects_.end() ? nullptr : &it->second;
}

LayerTree build_layer_tree(const SceneCatalog& catalog) {
  LayerTree tree = LayerTree::canonical();
  for (const auto& [id, obj] : catalog.objects()) {
    if (!tree.contains(obj.layer_id) || !tree.is_leaf(obj.layer_id)) {
      throw Error(ErrorCode::OrphanLayer, id.str() + " references layer '" + obj.layer_id + "'");
    }
  }
  return tree;
}

namespace {

bool shown(const SceneObject& obj, int z, const LayerTree& tree, const ObjectFilter& filter) {
  if (obj.lod_min_zoom > z) return false;
  if (!tree.effective_visibility(obj.layer_id)) return false;
  return !filter || filter(obj);
}

}  // namespace

TileManifest objects_for_tile(const SceneCatalog& catalog, const TileKey& key, const LayerTree& tree,
                              Millis generated_at, const ObjectFilter& filter) {
  TileManifest m{key, {}, generated_at};
  for (const auto& id : catalog.index().query_bbox(key.bbox())) {
    const SceneObject* obj = catalog.find(id);
    if (obj != nullptr && shown(*obj, key.z, tree, filter)) m.objects.push_back(*obj);
  }
  return m;
}

std::optional<SceneObject> pick_object(const SceneCatalog& catalog, const geo::GeoPoint& p, int z,
                                       PickMode mode, const LayerTree& tree, const ObjectFilter& filter) {
  const auto band = mode == PickMode::Above ? geo::Band::Above : geo::Band::Below;
  const SceneObject* best = nullptr;
  double best_area = 0.0;
  // query_point returns ids in ascending order, so strict < keeps the
  // smallest id among equal areas.
  for (const auto& id : catalog.index().query_point(p, band)) {
    const SceneObject* obj = catalog.find(id);
    if (obj == nullptr || !shown(*obj, z, tree, filter)) continue;
    const double area = obj->area_m2();
    if (best == nullptr || area < best_area) {
      best = obj;
      best_area = area;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

std::vector<EntityId> trace_connected(const Store& store, const EntityId& node, Millis t) {
  if (!store.contains(node)) throw Error(ErrorCode::UnknownEntity, node.str());
  if (node.kind() != EntityKind::PowerNode) throw Error(ErrorCode::WrongKind, node.str() + " is not a PowerNode");
  if (!store.is_live(node, t)) throw Error(ErrorCode::UnknownEntity, node.str() + " is not live");

  std::set<EntityId> seen{node};
  std::deque<EntityId> frontier{node};
  while (!frontier.empty()) {
    const EntityId cur = frontier.front();
    frontier.pop_front();
    auto visit = [&](const EntityId& next) {
      if (next.kind() != EntityKind::PowerNode || seen.contains(next) || !store.is_live(next, t)) return;
      seen.insert(next);
      frontier.push_back(next);
    };
    for (const auto& r : store.relations_of(cur, Predicate::ConnectedTo, t, Direction::Out)) visit(r.object);
    for (const auto& r : store.relations_of(cur, Predicate::ConnectedTo, t, Direction::In)) visit(r.subject);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace holocity::scene
