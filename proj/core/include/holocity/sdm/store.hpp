#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "holocity/sdm/entity.hpp"
#include "holocity/sdm/event.hpp"

namespace holocity {

enum class Direction { Out, In };

// World as known at `at`: every live entity's current state plus every relation
// whose interval contains `at`. A state's closing time is only reported if it is
// not after `at`, so a snapshot does not depend on events later than `at`.
struct Snapshot {
  Millis at = 0;
  std::map<EntityId, StateRecord> states;
  std::vector<SemanticRelation> relations;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct HolographicRecord {
  Millis at = 0;
  StateRecord house;
  std::optional<StateRecord> building;
  std::optional<StateRecord> owner;
  std::vector<StateRecord> residents;
  std::optional<AdminPath> admin_path;
  std::vector<StateRecord> open_events;
};

// Event-sourced spatiotemporal store. Every mutation is an EventRecord appended
// to an in-memory log; entity states and semantic relations are derived from
// the log and indexed for as-of lookups.
//
// Not internally synchronized: one writer at a time, readers must not overlap
// with apply_event (see api::Service for the locking wrapper).
class Store {
 public:
  Store() = default;

  // Checks every precondition of apply_event without changing anything.
  // Throws Error with the same code apply_event would.
  void validate(const EventRecord& event) const;

  // Applies one event. Returns the subject's new current state.
  StateRecord apply_event(const EventRecord& event);

  std::optional<StateRecord> state_at(const EntityId& id, Millis t) const;

  // Full state history (including tombstones) ordered by version.
  std::span<const StateRecord> history(const EntityId& id) const;

  std::vector<SemanticRelation> relations_of(const EntityId& id, std::optional<Predicate> predicate,
                                             Millis t, Direction direction) const;

  HolographicRecord household_record(const EntityId& house, Millis t) const;

  // Region chain via LocatedIn from an AdminRegion grid cell upward.
  std::optional<AdminPath> admin_path_of_region(const EntityId& grid_cell, Millis t) const;

  Snapshot snapshot_at(Millis t) const;

  bool contains(const EntityId& id) const noexcept { return entities_.contains(id); }
  bool is_live(const EntityId& id, Millis t) const { return state_at(id, t).has_value(); }

  // Sorted ids of every entity ever created, optionally filtered by kind.
  std::vector<EntityId> entity_ids(std::optional<EntityKind> kind = std::nullopt) const;

  const std::vector<EventRecord>& log() const noexcept { return log_; }
  std::uint64_t last_event_id() const noexcept { return log_.empty() ? 0 : log_.back().event_id; }
  Millis latest_timestamp() const noexcept { return latest_timestamp_; }
  std::size_t entity_count() const noexcept { return entities_.size(); }

 private:
  struct History {
    std::vector<StateRecord> states;
    bool deleted = false;
  };

  const History* find(const EntityId& id) const;
  std::size_t find_open_relation(const EntityId& subject, Predicate predicate,
                                 const EntityId& object) const;
  void close_relations_touching(const EntityId& id, Millis t);
  StateRecord& push_state(History& h, const EventRecord& event, Attributes attributes,
                          bool tombstone);

  std::vector<EventRecord> log_;
  std::unordered_map<EntityId, History> entities_;
  std::vector<SemanticRelation> relations_;
  std::unordered_map<EntityId, std::vector<std::size_t>> outgoing_;
  std::unordered_map<EntityId, std::vector<std::size_t>> incoming_;
  Millis latest_timestamp_ = 0;
};

// Folds every event of `log` with timestamp <= t1 into a fresh store and
// returns its snapshot at t1. Throws Error(InvalidRange) when t0 > t1.
Snapshot replay_range(std::span<const EventRecord> log, Millis t0, Millis t1);
Snapshot replay_range(const Store& store, Millis t0, Millis t1);

// Ids of entities that have at least one event with t0 <= timestamp <= t1.
std::vector<EntityId> changed_between(std::span<const EventRecord> log, Millis t0, Millis t1);

}  // namespace holocity
