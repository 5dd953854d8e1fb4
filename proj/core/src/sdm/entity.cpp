#include "holocity/sdm/entity.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "holocity/error.hpp"

namespace holocity {
namespace {

struct KindNames {
  EntityKind kind;
  std::string_view name;
  std::string_view prefix;
};

constexpr std::array<KindNames, 13> kKindNames{{
    {EntityKind::Person, "Person", "person"},
    {EntityKind::Company, "Company", "company"},
    {EntityKind::House, "House", "house"},
    {EntityKind::Building, "Building", "building"},
    {EntityKind::Room, "Room", "room"},
    {EntityKind::UrbanComponent, "UrbanComponent", "urban_component"},
    {EntityKind::UrbanEvent, "UrbanEvent", "urban_event"},
    {EntityKind::RoadSegment, "RoadSegment", "road_segment"},
    {EntityKind::PipelineSegment, "PipelineSegment", "pipeline_segment"},
    {EntityKind::SubwayLine, "SubwayLine", "subway_line"},
    {EntityKind::PowerNode, "PowerNode", "power_node"},
    {EntityKind::PowerEdge, "PowerEdge", "power_edge"},
    {EntityKind::AdminRegion, "AdminRegion", "admin_region"},
}};

const KindNames& names_of(EntityKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

}  // namespace

std::string_view kind_name(EntityKind kind) noexcept { return names_of(kind).name; }
std::string_view kind_prefix(EntityKind kind) noexcept { return names_of(kind).prefix; }

std::optional<EntityKind> parse_kind(std::string_view text) noexcept {
  for (const auto& k : kKindNames) {
    if (text == k.name || text == k.prefix) return k.kind;
  }
  return std::nullopt;
}

EntityId::EntityId(EntityKind kind, std::string_view local_id) : kind_(kind) {
  if (local_id.empty()) throw Error(ErrorCode::ParseError, "entity id needs a non-empty local id");
  const auto prefix = kind_prefix(kind);
  text_.reserve(prefix.size() + 1 + local_id.size());
  text_.append(prefix).append(":").append(local_id);
  prefix_len_ = prefix.size();
}

std::string_view EntityId::local_id() const noexcept {
  if (text_.empty()) return {};
  return std::string_view(text_).substr(prefix_len_ + 1);
}

std::optional<EntityId> EntityId::try_parse(std::string_view text) noexcept {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon + 1 >= text.size()) return std::nullopt;
  const auto prefix = text.substr(0, colon);
  // Only the lower-case prefix is canonical; "House:h1" does not round-trip.
  for (const auto& k : kKindNames) {
    if (prefix == k.prefix) {
      EntityId id;
      id.kind_ = k.kind;
      id.text_ = std::string(text);
      id.prefix_len_ = prefix.size();
      return id;
    }
  }
  return std::nullopt;
}

EntityId EntityId::parse(std::string_view text) {
  if (auto id = try_parse(text)) return *std::move(id);
  throw Error(ErrorCode::ParseError, "malformed entity id '" + std::string(text) + "'");
}

std::string scalar_label(const Scalar& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  const double d = std::get<double>(value);
  if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", d);
    return buf;
  }
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, end);
}

std::optional<double> scalar_number(const Scalar& value) noexcept {
  if (const auto* d = std::get_if<double>(&value)) return *d;
  return std::nullopt;
}

std::string_view admin_level_name(AdminLevel level) noexcept {
  switch (level) {
    case AdminLevel::District: return "district";
    case AdminLevel::Street: return "street";
    case AdminLevel::Community: return "community";
    case AdminLevel::Grid: return "grid";
  }
  return "grid";
}

std::optional<AdminLevel> parse_admin_level(std::string_view text) noexcept {
  if (text == "district") return AdminLevel::District;
  if (text == "street") return AdminLevel::Street;
  if (text == "community") return AdminLevel::Community;
  if (text == "grid") return AdminLevel::Grid;
  return std::nullopt;
}

const EntityId& AdminPath::at(AdminLevel level) const noexcept {
  switch (level) {
    case AdminLevel::District: return district;
    case AdminLevel::Street: return street;
    case AdminLevel::Community: return community;
    case AdminLevel::Grid: return grid_cell;
  }
  return grid_cell;
}

}  // namespace holocity
