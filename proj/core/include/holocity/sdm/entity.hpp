#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace holocity {

// Integer milliseconds since the Unix epoch, UTC.
using Millis = std::int64_t;

enum class EntityKind {
  Person,
  Company,
  House,
  Building,
  Room,
  UrbanComponent,
  UrbanEvent,
  RoadSegment,
  PipelineSegment,
  SubwayLine,
  PowerNode,
  PowerEdge,
  AdminRegion,
};

inline constexpr EntityKind kAllEntityKinds[] = {
    EntityKind::Person,         EntityKind::Company,         EntityKind::House,
    EntityKind::Building,       EntityKind::Room,            EntityKind::UrbanComponent,
    EntityKind::UrbanEvent,     EntityKind::RoadSegment,     EntityKind::PipelineSegment,
    EntityKind::SubwayLine,     EntityKind::PowerNode,       EntityKind::PowerEdge,
    EntityKind::AdminRegion,
};

// "Building", "PowerNode", ... as used in documents and query strings.
std::string_view kind_name(EntityKind kind) noexcept;
// "building", "power_node", ... as used in the canonical id prefix.
std::string_view kind_prefix(EntityKind kind) noexcept;

// Accepts either spelling. Unknown strings yield nullopt.
std::optional<EntityKind> parse_kind(std::string_view text) noexcept;

// Identity of an entity: a kind plus a non-empty local id. The canonical text
// form is "<kind_prefix>:<local_id>", e.g. "house:h1". Ordering, equality and
// hashing all follow the canonical text, so lexical tie-breaks are stable.
class EntityId {
 public:
  EntityId() = default;
  EntityId(EntityKind kind, std::string_view local_id);

  // Throws Error(ParseError) on a missing separator, unknown kind or empty
  // local id.
  static EntityId parse(std::string_view text);
  static std::optional<EntityId> try_parse(std::string_view text) noexcept;

  EntityKind kind() const noexcept { return kind_; }
  std::string_view local_id() const noexcept;
  const std::string& str() const noexcept { return text_; }
  bool empty() const noexcept { return text_.empty(); }

  friend bool operator==(const EntityId& a, const EntityId& b) noexcept { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const EntityId& a, const EntityId& b) noexcept {
    return a.text_ <=> b.text_;
  }

 private:
  EntityKind kind_ = EntityKind::Person;
  std::string text_;
  std::size_t prefix_len_ = 0;
};

// Attribute values are flat scalars. Nested structures are flattened into
// dotted keys by whoever produces the event.
using Scalar = std::variant<std::string, double, bool>;
using Attributes = std::map<std::string, Scalar>;

// Human-readable form used for category labels: strings verbatim, booleans as
// true/false, integral numbers without a fraction.
std::string scalar_label(const Scalar& value);
std::optional<double> scalar_number(const Scalar& value) noexcept;

enum class AdminLevel { District = 0, Street = 1, Community = 2, Grid = 3 };

std::string_view admin_level_name(AdminLevel level) noexcept;
std::optional<AdminLevel> parse_admin_level(std::string_view text) noexcept;

// district -> street -> community -> grid cell, always all four.
struct AdminPath {
  EntityId district;
  EntityId street;
  EntityId community;
  EntityId grid_cell;

  const EntityId& at(AdminLevel level) const noexcept;
  friend bool operator==(const AdminPath&, const AdminPath&) = default;
};

}  // namespace holocity

template <>
struct std::hash<holocity::EntityId> {
  std::size_t operator()(const holocity::EntityId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
