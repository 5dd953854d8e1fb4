#include "holocity/analytics/region.hpp"

#include <charconv>
#include <deque>
#include <set>
#include <string>

#include "holocity/error.hpp"

namespace holocity::analytics {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

EntityId region_id(std::string_view local) {
  if (local.empty()) throw Error(ErrorCode::ParseError, "empty region id");
  return EntityId(EntityKind::AdminRegion, local);
}

void require_region(const geo::GeoIndex& index, const EntityId& id, AdminLevel level) {
  if (index.admin_level_of(id) != level) {
    throw Error(ErrorCode::UnknownRegion,
                id.str() + " is not a registered " + std::string(admin_level_name(level)));
  }
}

}  // namespace

RegionSelector parse_region(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "region needs a '<type>:' prefix");
  const auto type = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  if (type == "admin") {
    AdminPrefix sel;
    for (auto part : split(rest, '/')) sel.levels.push_back(region_id(part));
    if (sel.levels.size() > 4) throw Error(ErrorCode::ParseError, "admin prefix has more than 4 levels");
    return sel;
  }
  if (type == "community") return CommunitySelector{region_id(rest)};
  if (type == "grid") {
    GridRange sel;
    if (!rest.empty())
      for (auto part : split(rest, ',')) sel.cells.push_back(region_id(part));
    return sel;
  }
  if (type == "bbox") {
    auto parts = split(rest, ',');
    if (parts.size() != 4) throw Error(ErrorCode::ParseError, "bbox needs 4 numbers");
    try {
      return BoxSelector{geo::BBox(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]),
                                   parse_double(parts[3]))};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidGeometry) throw Error(ErrorCode::UnknownRegion, e.what());
      throw;
    }
  }
  throw Error(ErrorCode::ParseError, "unknown region type '" + std::string(type) + "'");
}

std::optional<geo::GeoPoint> locate_entity(const Store& store, const geo::GeoIndex& index, const EntityId& id,
                                           Millis t) {
  constexpr Predicate kHops[] = {Predicate::LivesIn, Predicate::PartOf, Predicate::LocatedIn};
  constexpr int kMaxDepth = 4;

  std::set<EntityId> seen{id};
  std::deque<std::pair<EntityId, int>> queue{{id, 0}};
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (const auto* entry = index.find(cur)) return geo::centroid_of(entry->geometry);
    if (const auto* area = index.admin_region_area(cur)) return area->centroid();
    if (depth == kMaxDepth) continue;
    for (Predicate p : kHops) {
      for (const auto& r : store.relations_of(cur, p, t, Direction::Out)) {
        if (seen.insert(r.object).second) queue.emplace_back(r.object, depth + 1);
      }
    }
  }
  return std::nullopt;
}

std::vector<EntityId> select_entities(const Store& store, const geo::GeoIndex& index,
                                      const RegionSelector& selector, EntityKind kind, Millis t) {
  std::set<EntityId> grid_cells;
  if (const auto* a = std::get_if<AdminPrefix>(&selector)) {
    if (a->levels.empty()) throw Error(ErrorCode::UnknownRegion, "empty admin prefix");
    for (std::size_t i = 0; i < a->levels.size(); ++i) require_region(index, a->levels[i], static_cast<AdminLevel>(i));
  } else if (const auto* c = std::get_if<CommunitySelector>(&selector)) {
    require_region(index, c->community, AdminLevel::Community);
  } else if (const auto* g = std::get_if<GridRange>(&selector)) {
    if (g->cells.empty()) return {};
    for (const auto& cell : g->cells) {
      require_region(index, cell, AdminLevel::Grid);
      grid_cells.insert(cell);
    }
  }

  auto in_region = [&](const geo::GeoPoint& p) -> bool {
    if (const auto* b = std::get_if<BoxSelector>(&selector)) return b->box.contains(p);
    AdminPath path;
    try {
      path = index.assign_admin_path(p);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Unassigned) return false;
      throw;
    }
    if (const auto* a = std::get_if<AdminPrefix>(&selector)) {
      for (std::size_t i = 0; i < a->levels.size(); ++i)
        if (path.at(static_cast<AdminLevel>(i)) != a->levels[i]) return false;
      return true;
    }
    if (const auto* c = std::get_if<CommunitySelector>(&selector)) return path.community == c->community;
    return grid_cells.contains(path.grid_cell);
  };

  std::vector<EntityId> out;
  for (const auto& id : store.entity_ids(kind)) {
    if (!store.is_live(id, t)) continue;
    auto loc = locate_entity(store, index, id, t);
    if (loc && in_region(*loc)) out.push_back(id);
  }
  return out;
}

}  // namespace holocity::analytics
