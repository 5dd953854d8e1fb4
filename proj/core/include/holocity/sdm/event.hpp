#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "holocity/sdm/entity.hpp"

namespace holocity {

enum class EventType { Create, Update, Delete, Relate, Unrelate };

enum class Predicate { LivesIn, Owns, PartOf, LocatedIn, Operates, ConnectedTo };

std::string_view event_type_name(EventType type) noexcept;
std::optional<EventType> parse_event_type(std::string_view text) noexcept;
std::string_view predicate_name(Predicate predicate) noexcept;
std::optional<Predicate> parse_predicate(std::string_view text) noexcept;

// Payload of Relate/Unrelate events. The subject is the event's entity and the
// interval starts (or ends) at the event timestamp.
struct RelationPayload {
  Predicate predicate = Predicate::LivesIn;
  EntityId object;

  friend bool operator==(const RelationPayload&, const RelationPayload&) = default;
};

using EventPayload = std::variant<Attributes, RelationPayload>;

struct EventRecord {
  std::uint64_t event_id = 0;
  Millis timestamp = 0;
  EntityId entity_id;
  EventType event_type = EventType::Create;
  EventPayload payload;
  std::string source;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// Half-open validity interval [from, to); an empty `to` means still open.
struct Interval {
  Millis from = 0;
  std::optional<Millis> to;

  bool contains(Millis t) const noexcept { return from <= t && (!to || t < *to); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct StateRecord {
  EntityId entity_id;
  std::uint64_t version = 0;
  Interval valid;
  Attributes attributes;
  // Set on the state opened by a Delete event. Tombstones take part in the
  // interval partition but are never returned by as-of lookups.
  bool tombstone = false;

  friend bool operator==(const StateRecord&, const StateRecord&) = default;
};

struct SemanticRelation {
  EntityId subject;
  Predicate predicate = Predicate::LivesIn;
  EntityId object;
  Interval valid;

  friend bool operator==(const SemanticRelation&, const SemanticRelation&) = default;
  friend auto operator<=>(const SemanticRelation& a, const SemanticRelation& b) noexcept {
    if (auto c = a.subject <=> b.subject; c != 0) return c;
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    if (auto c = a.object <=> b.object; c != 0) return c;
    return a.valid.from <=> b.valid.from;
  }
};

}  // namespace holocity
