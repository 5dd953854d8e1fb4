#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holocity/geo/index.hpp"
#include "holocity/scene/layers.hpp"
#include "holocity/scene/tiles.hpp"
#include "holocity/sdm/store.hpp"

namespace holocity::scene {

// Footprints are extruded from base_alt by height_m; polylines and points
// carry their own altitudes.
struct SceneObject {
  EntityId entity_id;
  std::string layer_id;
  geo::Geometry geometry;
  double base_alt = 0.0;
  double height_m = 0.0;
  int lod_min_zoom = 0;

  geo::Band band() const { return geo::band_for(geometry, base_alt); }
  double area_m2() const { return geo::area_m2_of(geometry); }
};

struct TileManifest {
  TileKey key;
  std::vector<SceneObject> objects;  // sorted by entity id
  Millis generated_at = 0;
};

// Minimum zoom at which an object of this kind enters tile manifests.
// Buildings (and houses) step by footprint area; other kinds are fixed.
int lod_min_zoom(double footprint_area_m2, EntityKind kind);

// Default layer for a kind when a document does not name one.
std::string default_layer_for(EntityKind kind);

// Throws what SceneCatalog::add would for an object it cannot accept.
void validate_scene_object(const SceneObject& object);

// Scene objects addressed by entity id and indexed spatially. Read-mostly:
// const members may run concurrently, mutation needs exclusive access.
class SceneCatalog {
 public:
  // Throws OrphanLayer when the layer is not a leaf of the canonical tree,
  // InvalidGeometry for negative height, out-of-range lod or a pipeline that
  // is not underground. Re-adding an id replaces the object.
  void add(SceneObject object);
  bool remove(const EntityId& id);

  const SceneObject* find(const EntityId& id) const;
  std::size_t size() const noexcept { return objects_.size(); }
  const std::map<EntityId, SceneObject>& objects() const noexcept { return objects_; }

  geo::GeoIndex& index() noexcept { return index_; }
  const geo::GeoIndex& index() const noexcept { return index_; }

 private:
  std::map<EntityId, SceneObject> objects_;
  geo::GeoIndex index_;
};

// Canonical tree; fails with OrphanLayer if any catalog object points at a
// layer that is not one of its leaves.
LayerTree build_layer_tree(const SceneCatalog& catalog);

// Optional extra filter, e.g. "entity is live at t".
using ObjectFilter = std::function<bool(const SceneObject&)>;

TileManifest objects_for_tile(const SceneCatalog& catalog, const TileKey& key, const LayerTree& tree,
                              Millis generated_at = 0, const ObjectFilter& filter = {});

enum class PickMode { Above, Below };

// Smallest-footprint object containing p among those visible at zoom z in the
// given altitude band; ties go to the smaller id.
std::optional<SceneObject> pick_object(const SceneCatalog& catalog, const geo::GeoPoint& p, int z,
                                       PickMode mode, const LayerTree& tree,
                                       const ObjectFilter& filter = {});

// PowerNodes reachable from `node` over ConnectedTo relations live at t, in
// either direction, including `node`.
std::vector<EntityId> trace_connected(const Store& store, const EntityId& node, Millis t);

}  // namespace holocity::scene
