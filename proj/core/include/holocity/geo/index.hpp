#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "holocity/geo/geometry.hpp"
#include "holocity/sdm/entity.hpp"

namespace holocity::geo {

enum class Band { Above, Below };

// Below when any vertex (or the base altitude, for extruded footprints) is
// under ground.
Band band_for(const Geometry& g, double base_alt = 0.0);

struct IndexEntry {
  EntityId id;
  Geometry geometry;
  Band band = Band::Above;

  BBox bbox() const { return bbox_of(geometry); }
};

struct Neighbor {
  EntityId id;
  double distance_m = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Spatial index over entity geometry plus the administrative partition.
//
// Queries return ids sorted by canonical text. Writers need exclusive access;
// const member functions may run concurrently.
class GeoIndex {
 public:
  GeoIndex();
  ~GeoIndex();
  GeoIndex(GeoIndex&&) noexcept;
  GeoIndex& operator=(GeoIndex&&) noexcept;

  // Replaces any entry with the same id.
  void insert(IndexEntry entry);
  // Packs the tree in one pass; replaces the current contents.
  void bulk_load(std::vector<IndexEntry> entries);
  bool erase(const EntityId& id);

  const IndexEntry* find(const EntityId& id) const;
  std::size_t size() const noexcept;

  std::vector<EntityId> query_bbox(const BBox& box, std::optional<Band> band = std::nullopt) const;
  std::vector<EntityId> query_point(const GeoPoint& p, std::optional<Band> band = std::nullopt) const;

  // k nearest entry centroids by great-circle distance, ascending, ties by id.
  std::vector<Neighbor> nearest_k(const GeoPoint& p, std::size_t k) const;

  // Administrative regions live in their own table so that object queries
  // never return them. `parent` is required for every level below District.
  void add_admin_region(const EntityId& id, AdminLevel level, std::optional<EntityId> parent,
                        Footprint area);
  bool has_admin_region(const EntityId& id) const;
  std::optional<AdminLevel> admin_level_of(const EntityId& id) const;
  const Footprint* admin_region_area(const EntityId& id) const;
  std::vector<EntityId> admin_regions(AdminLevel level) const;

  // Descends district -> street -> community -> grid, choosing at each level
  // the lexically smallest child containing p. Throws Error(Unassigned).
  AdminPath assign_admin_path(const GeoPoint& p) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace holocity::geo
