#include "holocity/sdm/store.hpp"

#include <algorithm>
#include <set>

#include "holocity/error.hpp"

namespace holocity {
namespace {

const Attributes& attributes_of(const EventRecord& event) {
  const auto* attrs = std::get_if<Attributes>(&event.payload);
  if (attrs == nullptr) {
    throw Error(ErrorCode::InvalidArgument, std::string(event_type_name(event.event_type)) +
                                                " event for " + event.entity_id.str() +
                                                " needs an attribute payload");
  }
  return *attrs;
}

const RelationPayload& relation_of(const EventRecord& event) {
  const auto* rel = std::get_if<RelationPayload>(&event.payload);
  if (rel == nullptr) {
    throw Error(ErrorCode::InvalidArgument, std::string(event_type_name(event.event_type)) +
                                                " event for " + event.entity_id.str() +
                                                " needs a relation payload");
  }
  return *rel;
}

// Closing time as known at t: a state that ends after t is still open then.
Interval clip_to(const Interval& iv, Millis t) {
  Interval out = iv;
  if (out.to && *out.to > t) out.to.reset();
  return out;
}

}  // namespace

const Store::History* Store::find(const EntityId& id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

std::size_t Store::find_open_relation(const EntityId& subject, Predicate predicate,
                                      const EntityId& object) const {
  auto it = outgoing_.find(subject);
  if (it == outgoing_.end()) return relations_.size();
  for (std::size_t idx : it->second) {
    const auto& r = relations_[idx];
    if (!r.valid.to && r.predicate == predicate && r.object == object) return idx;
  }
  return relations_.size();
}

void Store::validate(const EventRecord& event) const {
  if (event.event_id != last_event_id() + 1) {
    throw Error(ErrorCode::OutOfOrderEvent, "expected event_id " + std::to_string(last_event_id() + 1) +
                                                ", got " + std::to_string(event.event_id));
  }
  if (event.entity_id.empty()) throw Error(ErrorCode::InvalidArgument, "event without entity_id");

  const History* h = find(event.entity_id);
  if (event.event_type == EventType::Create) {
    attributes_of(event);
    if (h != nullptr) throw Error(ErrorCode::DuplicateCreate, event.entity_id.str() + " already exists");
    return;
  }

  if (h == nullptr) throw Error(ErrorCode::UnknownEntity, event.entity_id.str());
  if (h->deleted) throw Error(ErrorCode::DeletedEntity, event.entity_id.str());
  if (event.timestamp < h->states.back().valid.from) {
    throw Error(ErrorCode::OutOfOrderEvent, "timestamp " + std::to_string(event.timestamp) +
                                                " precedes the current state of " +
                                                event.entity_id.str());
  }

  switch (event.event_type) {
    case EventType::Create:
      break;
    case EventType::Update:
    case EventType::Delete:
      attributes_of(event);
      break;
    case EventType::Relate: {
      const auto& rel = relation_of(event);
      if (rel.object == event.entity_id) throw Error(ErrorCode::SelfRelation, event.entity_id.str());
      const History* obj = find(rel.object);
      if (obj == nullptr) throw Error(ErrorCode::UnknownEntity, rel.object.str());
      if (!state_at(rel.object, event.timestamp)) {
        throw Error(obj->deleted ? ErrorCode::DeletedEntity : ErrorCode::UnknownEntity,
                    rel.object.str() + " is not live at " + std::to_string(event.timestamp));
      }
      if (find_open_relation(event.entity_id, rel.predicate, rel.object) != relations_.size()) {
        throw Error(ErrorCode::DuplicateRelation, event.entity_id.str() + " " +
                                                      std::string(predicate_name(rel.predicate)) + " " +
                                                      rel.object.str());
      }
      break;
    }
    case EventType::Unrelate: {
      const auto& rel = relation_of(event);
      const auto idx = find_open_relation(event.entity_id, rel.predicate, rel.object);
      if (idx == relations_.size()) {
        throw Error(ErrorCode::NoSuchRelation, event.entity_id.str() + " " +
                                                   std::string(predicate_name(rel.predicate)) + " " +
                                                   rel.object.str());
      }
      if (event.timestamp <= relations_[idx].valid.from) {
        throw Error(ErrorCode::OutOfOrderEvent, "Unrelate must come after the Relate it closes");
      }
      break;
    }
  }
}

StateRecord& Store::push_state(History& h, const EventRecord& event, Attributes attributes,
                               bool tombstone) {
  std::uint64_t version = 1;
  if (!h.states.empty()) {
    auto& prev = h.states.back();
    prev.valid.to = event.timestamp;
    version = prev.version + 1;
  }
  h.states.push_back(StateRecord{event.entity_id, version, Interval{event.timestamp, std::nullopt},
                                 std::move(attributes), tombstone});
  return h.states.back();
}

void Store::close_relations_touching(const EntityId& id, Millis t) {
  for (const auto* table : {&outgoing_, &incoming_}) {
    auto it = table->find(id);
    if (it == table->end()) continue;
    for (std::size_t idx : it->second) {
      auto& r = relations_[idx];
      if (!r.valid.to) r.valid.to = std::max(t, r.valid.from);
    }
  }
}

StateRecord Store::apply_event(const EventRecord& event) {
  validate(event);
  log_.push_back(event);
  latest_timestamp_ = std::max(latest_timestamp_, event.timestamp);

  auto& h = entities_[event.entity_id];
  switch (event.event_type) {
    case EventType::Create:
      return push_state(h, event, attributes_of(event), false);
    case EventType::Update: {
      Attributes merged = h.states.back().attributes;
      for (const auto& [key, value] : attributes_of(event)) merged[key] = value;
      return push_state(h, event, std::move(merged), false);
    }
    case EventType::Delete:
      h.deleted = true;
      close_relations_touching(event.entity_id, event.timestamp);
      return push_state(h, event, {}, true);
    case EventType::Relate: {
      const auto& rel = relation_of(event);
      const std::size_t idx = relations_.size();
      relations_.push_back(SemanticRelation{event.entity_id, rel.predicate, rel.object,
                                            Interval{event.timestamp, std::nullopt}});
      outgoing_[event.entity_id].push_back(idx);
      incoming_[rel.object].push_back(idx);
      Attributes same = h.states.back().attributes;
      return push_state(h, event, std::move(same), false);
    }
    case EventType::Unrelate: {
      const auto& rel = relation_of(event);
      relations_[find_open_relation(event.entity_id, rel.predicate, rel.object)].valid.to =
          event.timestamp;
      Attributes same = h.states.back().attributes;
      return push_state(h, event, std::move(same), false);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unhandled event type");
}

std::optional<StateRecord> Store::state_at(const EntityId& id, Millis t) const {
  const History* h = find(id);
  if (h == nullptr) return std::nullopt;
  const auto& states = h->states;
  auto it = std::upper_bound(states.begin(), states.end(), t,
                             [](Millis value, const StateRecord& s) { return value < s.valid.from; });
  if (it == states.begin()) return std::nullopt;
  const StateRecord& s = *std::prev(it);
  if (s.tombstone || !s.valid.contains(t)) return std::nullopt;
  return s;
}

std::span<const StateRecord> Store::history(const EntityId& id) const {
  const History* h = find(id);
  if (h == nullptr) return {};
  return h->states;
}

std::vector<SemanticRelation> Store::relations_of(const EntityId& id, std::optional<Predicate> predicate,
                                                  Millis t, Direction direction) const {
  const auto& table = direction == Direction::Out ? outgoing_ : incoming_;
  std::vector<SemanticRelation> out;
  auto it = table.find(id);
  if (it == table.end()) return out;
  for (std::size_t idx : it->second) {
    const auto& r = relations_[idx];
    if (predicate && r.predicate != *predicate) continue;
    if (!r.valid.contains(t)) continue;
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<AdminPath> Store::admin_path_of_region(const EntityId& grid_cell, Millis t) const {
  constexpr AdminLevel kUpward[] = {AdminLevel::Grid, AdminLevel::Community, AdminLevel::Street,
                                    AdminLevel::District};
  EntityId chain[4];
  EntityId current = grid_cell;
  for (int i = 0; i < 4; ++i) {
    if (current.kind() != EntityKind::AdminRegion) return std::nullopt;
    auto state = state_at(current, t);
    if (!state) return std::nullopt;
    auto level = state->attributes.find("level");
    if (level == state->attributes.end()) return std::nullopt;
    const auto* name = std::get_if<std::string>(&level->second);
    if (name == nullptr || parse_admin_level(*name) != kUpward[i]) return std::nullopt;
    chain[i] = current;
    if (i == 3) break;
    auto parents = relations_of(current, Predicate::LocatedIn, t, Direction::Out);
    if (parents.empty()) return std::nullopt;
    current = parents.front().object;
  }
  return AdminPath{chain[3], chain[2], chain[1], chain[0]};
}

HolographicRecord Store::household_record(const EntityId& house, Millis t) const {
  if (!contains(house)) throw Error(ErrorCode::UnknownEntity, house.str());
  if (house.kind() != EntityKind::House) {
    throw Error(ErrorCode::WrongKind, house.str() + " is not a House");
  }
  auto house_state = state_at(house, t);
  if (!house_state) throw Error(ErrorCode::UnknownEntity, house.str() + " is not live at " + std::to_string(t));

  HolographicRecord rec;
  rec.at = t;
  rec.house = *house_state;

  std::optional<EntityId> building_id;
  for (const auto& r : relations_of(house, Predicate::PartOf, t, Direction::Out)) {
    if (r.object.kind() != EntityKind::Building) continue;
    if (auto s = state_at(r.object, t)) {
      rec.building = std::move(s);
      building_id = r.object;
      break;
    }
  }
  for (const auto& r : relations_of(house, Predicate::Owns, t, Direction::In)) {
    if (auto s = state_at(r.subject, t)) {
      rec.owner = std::move(s);
      break;
    }
  }
  for (const auto& r : relations_of(house, Predicate::LivesIn, t, Direction::In)) {
    if (auto s = state_at(r.subject, t)) rec.residents.push_back(*std::move(s));
  }

  auto grid_of = [&](const EntityId& id) -> std::optional<EntityId> {
    for (const auto& r : relations_of(id, Predicate::LocatedIn, t, Direction::Out)) {
      if (r.object.kind() == EntityKind::AdminRegion) return r.object;
    }
    return std::nullopt;
  };
  auto grid = grid_of(house);
  if (!grid && building_id) grid = grid_of(*building_id);
  if (grid) {
    rec.admin_path = admin_path_of_region(*grid, t);
    if (rec.admin_path) {
      for (const auto& r : relations_of(*grid, Predicate::LocatedIn, t, Direction::In)) {
        if (r.subject.kind() != EntityKind::UrbanEvent) continue;
        if (auto s = state_at(r.subject, t)) rec.open_events.push_back(*std::move(s));
      }
    }
  }
  return rec;
}

Snapshot Store::snapshot_at(Millis t) const {
  Snapshot snap;
  snap.at = t;
  for (const auto& [id, h] : entities_) {
    if (auto s = state_at(id, t)) {
      s->valid = clip_to(s->valid, t);
      snap.states.emplace(id, *std::move(s));
    }
  }
  for (const auto& r : relations_) {
    if (!r.valid.contains(t)) continue;
    auto copy = r;
    copy.valid = clip_to(copy.valid, t);
    snap.relations.push_back(std::move(copy));
  }
  std::sort(snap.relations.begin(), snap.relations.end());
  return snap;
}

std::vector<EntityId> Store::entity_ids(std::optional<EntityKind> kind) const {
  std::vector<EntityId> ids;
  ids.reserve(entities_.size());
  for (const auto& [id, h] : entities_) {
    if (!kind || id.kind() == *kind) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

Snapshot replay_range(std::span<const EventRecord> log, Millis t0, Millis t1) {
  if (t0 > t1) throw Error(ErrorCode::InvalidRange, "replay range has from > to");
  Store fresh;
  for (const auto& event : log) {
    if (event.timestamp > t1) continue;
    // Skipping later events leaves gaps in the id sequence; renumber so the
    // contiguous-id precondition still holds for the filtered fold.
    EventRecord copy = event;
    copy.event_id = fresh.last_event_id() + 1;
    fresh.apply_event(copy);
  }
  return fresh.snapshot_at(t1);
}

Snapshot replay_range(const Store& store, Millis t0, Millis t1) {
  return replay_range(std::span<const EventRecord>(store.log()), t0, t1);
}

std::vector<EntityId> changed_between(std::span<const EventRecord> log, Millis t0, Millis t1) {
  if (t0 > t1) throw Error(ErrorCode::InvalidRange, "range has from > to");
  std::set<EntityId> ids;
  for (const auto& event : log) {
    if (event.timestamp >= t0 && event.timestamp <= t1) ids.insert(event.entity_id);
  }
  return {ids.begin(), ids.end()};
}

}  // namespace holocity
