#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "holocity/geo/index.hpp"
#include "holocity/sdm/store.hpp"

namespace holocity::analytics {

// Leading levels of an administrative path, district first (1 to 4 ids).
struct AdminPrefix {
  std::vector<EntityId> levels;
};
struct CommunitySelector {
  EntityId community;
};
struct GridRange {
  std::vector<EntityId> cells;
};
struct BoxSelector {
  geo::BBox box;
};

using RegionSelector = std::variant<AdminPrefix, CommunitySelector, GridRange, BoxSelector>;

// Query-string form: "admin:d1/s1", "community:c1", "grid:g1,g2",
// "bbox:minlon,minlat,maxlon,maxlat". Region ids are AdminRegion local ids.
// Throws Error(ParseError) on malformed input.
RegionSelector parse_region(std::string_view text);

// Where an entity is on the map at t: its own indexed geometry (centroid), or
// failing that the first located entity reached over live LivesIn, PartOf and
// LocatedIn relations (a person through their house and its building).
std::optional<geo::GeoPoint> locate_entity(const Store& store, const geo::GeoIndex& index,
                                           const EntityId& id, Millis t);

// Entities of `kind` live at t whose location falls in the region. Throws
// UnknownRegion when the selector names a region that is not registered at
// the expected level.
std::vector<EntityId> select_entities(const Store& store, const geo::GeoIndex& index,
                                      const RegionSelector& selector, EntityKind kind, Millis t);

}  // namespace holocity::analytics
