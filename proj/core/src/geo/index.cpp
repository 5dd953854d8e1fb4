#include "holocity/geo/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "holocity/error.hpp"

namespace holocity::geo {
namespace {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

using RPoint = bg::model::point<double, 2, bg::cs::cartesian>;
using RBox = bg::model::box<RPoint>;
using RValue = std::pair<RBox, std::size_t>;
using RTree = bgi::rtree<RValue, bgi::rstar<16>>;

RBox to_rbox(const BBox& b) { return RBox(RPoint(b.min_lon, b.min_lat), RPoint(b.max_lon, b.max_lat)); }

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct Region {
  EntityId id;
  AdminLevel level;
  std::optional<EntityId> parent;
  Footprint area;
};

}  // namespace

Band band_for(const Geometry& g, double base_alt) {
  return (base_alt < 0.0 || min_alt_of(g) < 0.0) ? Band::Below : Band::Above;
}

struct GeoIndex::Impl {
  struct Slot {
    IndexEntry entry;
    BBox box;
    GeoPoint centroid;
  };

  RTree tree;
  std::vector<std::optional<Slot>> slots;
  std::vector<std::size_t> free_slots;
  std::unordered_map<EntityId, std::size_t> by_id;

  std::map<EntityId, Region> regions;
  std::map<EntityId, std::vector<EntityId>> children;  // parent -> sorted children
  std::vector<EntityId> districts;                     // sorted

  std::size_t place(IndexEntry entry) {
    Slot slot{std::move(entry), {}, {}};
    slot.box = slot.entry.bbox();
    slot.centroid = centroid_of(slot.entry.geometry);
    std::size_t idx;
    if (!free_slots.empty()) {
      idx = free_slots.back();
      free_slots.pop_back();
      slots[idx] = std::move(slot);
    } else {
      idx = slots.size();
      slots.push_back(std::move(slot));
    }
    by_id[slots[idx]->entry.id] = idx;
    return idx;
  }

  bool remove(const EntityId& id) {
    auto it = by_id.find(id);
    if (it == by_id.end()) return false;
    const std::size_t idx = it->second;
    tree.remove(RValue(to_rbox(slots[idx]->box), idx));
    slots[idx].reset();
    free_slots.push_back(idx);
    by_id.erase(it);
    return true;
  }

  bool accept(const Slot& s, std::optional<Band> band) const { return !band || s.entry.band == *band; }

  static std::vector<EntityId> sorted(std::vector<EntityId> ids) {
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  bool descend(const std::vector<EntityId>& candidates, const GeoPoint& p, int level,
               EntityId (&path)[4]) const {
    for (const auto& id : candidates) {
      const Region& r = regions.at(id);
      if (!r.area.bbox().contains(p) || !ring_contains(r.area.ring(), p)) continue;
      path[level] = id;
      if (level == 3) return true;
      auto kids = children.find(id);
      if (kids != children.end() && descend(kids->second, p, level + 1, path)) return true;
    }
    return false;
  }
};

GeoIndex::GeoIndex() : impl_(std::make_unique<Impl>()) {}
GeoIndex::~GeoIndex() = default;
GeoIndex::GeoIndex(GeoIndex&&) noexcept = default;
GeoIndex& GeoIndex::operator=(GeoIndex&&) noexcept = default;

void GeoIndex::insert(IndexEntry entry) {
  if (entry.id.empty()) throw Error(ErrorCode::InvalidGeometry, "index entry without id");
  impl_->remove(entry.id);
  const std::size_t idx = impl_->place(std::move(entry));
  impl_->tree.insert(RValue(to_rbox(impl_->slots[idx]->box), idx));
}

void GeoIndex::bulk_load(std::vector<IndexEntry> entries) {
  impl_->slots.clear();
  impl_->free_slots.clear();
  impl_->by_id.clear();
  std::vector<RValue> values;
  values.reserve(entries.size());
  for (auto& e : entries) {
    if (auto it = impl_->by_id.find(e.id); it != impl_->by_id.end()) {
      // Later duplicates replace earlier ones, as with insert.
      impl_->slots[it->second].reset();
      impl_->free_slots.push_back(it->second);
      impl_->by_id.erase(it);
    }
    impl_->place(std::move(e));
  }
  for (std::size_t i = 0; i < impl_->slots.size(); ++i) {
    if (impl_->slots[i]) values.emplace_back(to_rbox(impl_->slots[i]->box), i);
  }
  impl_->tree = RTree(values.begin(), values.end());
}

bool GeoIndex::erase(const EntityId& id) { return impl_->remove(id); }

const IndexEntry* GeoIndex::find(const EntityId& id) const {
  auto it = impl_->by_id.find(id);
  return it == impl_->by_id.end() ? nullptr : &impl_->slots[it->second]->entry;
}

std::size_t GeoIndex::size() const noexcept { return impl_->by_id.size(); }

std::vector<EntityId> GeoIndex::query_bbox(const BBox& box, std::optional<Band> band) const {
  std::vector<EntityId> out;
  for (auto it = impl_->tree.qbegin(bgi::intersects(to_rbox(box))); it != impl_->tree.qend(); ++it) {
    const auto& slot = *impl_->slots[it->second];
    if (impl_->accept(slot, band) && intersects(slot.entry.geometry, box)) out.push_back(slot.entry.id);
  }
  return Impl::sorted(std::move(out));
}

std::vector<EntityId> GeoIndex::query_point(const GeoPoint& p, std::optional<Band> band) const {
  std::vector<EntityId> out;
  const RPoint rp(p.lon, p.lat);
  for (auto it = impl_->tree.qbegin(bgi::intersects(rp)); it != impl_->tree.qend(); ++it) {
    const auto& slot = *impl_->slots[it->second];
    if (impl_->accept(slot, band) && contains(slot.entry.geometry, p)) out.push_back(slot.entry.id);
  }
  return Impl::sorted(std::move(out));
}

std::vector<Neighbor> GeoIndex::nearest_k(const GeoPoint& p, std::size_t k) const {
  std::vector<Neighbor> found;
  if (k == 0 || impl_->by_id.empty()) return found;

  auto finish = [&](std::vector<Neighbor> v) {
    std::sort(v.begin(), v.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.distance_m != b.distance_m ? a.distance_m < b.distance_m : a.id < b.id;
    });
    if (v.size() > k) v.resize(k);
    return v;
  };
  auto full_scan = [&] {
    std::vector<Neighbor> all;
    all.reserve(impl_->by_id.size());
    for (const auto& slot : impl_->slots)
      if (slot) all.push_back({slot->entry.id, haversine_m(p, slot->centroid)});
    return finish(std::move(all));
  };
  if (impl_->by_id.size() <= k) return full_scan();

  // Grow a search radius until it holds k centroids. Every centroid within
  // `radius` lies inside the lon/lat window below, and an entry's bbox always
  // contains its centroid, so the rtree window query cannot miss one.
  const double lat_rad = p.lat * std::numbers::pi / 180.0;
  for (double radius = 500.0; radius < std::numbers::pi * kEarthRadiusM / 4; radius *= 4.0) {
    const double delta = radius / kEarthRadiusM;
    const double dlat = delta * kRadToDeg;
    if (std::fabs(p.lat) + dlat >= 89.0) break;
    const double dlon = std::asin(std::min(1.0, std::sin(delta) / std::cos(lat_rad))) * kRadToDeg;
    if (p.lon - dlon < -180.0 || p.lon + dlon > 180.0) break;
    const RBox window(RPoint(p.lon - dlon, p.lat - dlat), RPoint(p.lon + dlon, p.lat + dlat));
    std::vector<Neighbor> within;
    for (auto it = impl_->tree.qbegin(bgi::intersects(window)); it != impl_->tree.qend(); ++it) {
      const auto& slot = *impl_->slots[it->second];
      const double d = haversine_m(p, slot.centroid);
      if (d <= radius) within.push_back({slot.entry.id, d});
    }
    if (within.size() >= k) return finish(std::move(within));
  }
  return full_scan();
}

void GeoIndex::add_admin_region(const EntityId& id, AdminLevel level, std::optional<EntityId> parent,
                                Footprint area) {
  if (id.kind() != EntityKind::AdminRegion) {
    throw Error(ErrorCode::WrongKind, id.str() + " is not an AdminRegion");
  }
  if (level == AdminLevel::District) {
    parent.reset();
  } else {
    if (!parent) throw Error(ErrorCode::InvalidGeometry, id.str() + " needs a parent region");
    auto it = impl_->regions.find(*parent);
    if (it == impl_->regions.end()) throw Error(ErrorCode::UnknownRegion, parent->str());
    if (static_cast<int>(it->second.level) + 1 != static_cast<int>(level)) {
      throw Error(ErrorCode::InvalidGeometry, id.str() + " is not one level below " + parent->str());
    }
  }
  if (impl_->regions.contains(id)) throw Error(ErrorCode::InvalidGeometry, id.str() + " registered twice");

  auto& siblings = parent ? impl_->children[*parent] : impl_->districts;
  siblings.insert(std::upper_bound(siblings.begin(), siblings.end(), id), id);
  impl_->regions.emplace(id, Region{id, level, std::move(parent), std::move(area)});
}

bool GeoIndex::has_admin_region(const EntityId& id) const { return impl_->regions.contains(id); }

std::optional<AdminLevel> GeoIndex::admin_level_of(const EntityId& id) const {
  auto it = impl_->regions.find(id);
  if (it == impl_->regions.end()) return std::nullopt;
  return it->second.level;
}

const Footprint* GeoIndex::admin_region_area(const EntityId& id) const {
  auto it = impl_->regions.find(id);
  return it == impl_->regions.end() ? nullptr : &it->second.area;
}

std::vector<EntityId> GeoIndex::admin_regions(AdminLevel level) const {
  std::vector<EntityId> out;
  for (const auto& [id, r] : impl_->regions)
    if (r.level == level) out.push_back(id);
  return out;
}

AdminPath GeoIndex::assign_admin_path(const GeoPoint& p) const {
  EntityId path[4];
  if (!impl_->descend(impl_->districts, p, 0, path)) {
    throw Error(ErrorCode::Unassigned, "(" + std::to_string(p.lon) + ", " + std::to_string(p.lat) +
                                           ") is outside the administrative coverage");
  }
  return AdminPath{path[0], path[1], path[2], path[3]};
}

}  // namespace holocity::geo
