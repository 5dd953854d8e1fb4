#include "holocity/sdm/event_codec.hpp"

#include <json.hpp>

#include "holocity/error.hpp"
#include "json_scalar.hpp"

namespace holocity {

using nlohmann::json;

std::string encode_event_line(const EventRecord& event) {
  json j;
  j["entity_id"] = event.entity_id.str();
  j["event_id"] = event.event_id;
  j["event_type"] = std::string(event_type_name(event.event_type));
  if (const auto* rel = std::get_if<RelationPayload>(&event.payload)) {
    j["payload"] = json{{"object", rel->object.str()}, {"predicate", std::string(predicate_name(rel->predicate))}};
  } else {
    j["payload"] = detail::attributes_to_json(std::get<Attributes>(event.payload));
  }
  j["source"] = event.source;
  j["timestamp"] = event.timestamp;
  return j.dump();
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

}  // namespace

EventRecord decode_event_line(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) bad("event line is not a JSON object");
  for (const char* key : {"entity_id", "event_id", "event_type", "payload", "source", "timestamp"}) {
    if (!j.contains(key)) bad(std::string("event line lacks '") + key + "'");
  }
  if (j.size() != 6) bad("event line has unexpected keys");

  EventRecord ev;
  if (!j["event_id"].is_number_unsigned()) bad("event_id must be an unsigned integer");
  ev.event_id = j["event_id"].get<std::uint64_t>();
  if (!j["timestamp"].is_number_integer()) bad("timestamp must be integer milliseconds");
  ev.timestamp = j["timestamp"].get<Millis>();
  if (!j["entity_id"].is_string()) bad("entity_id must be a string");
  ev.entity_id = EntityId::parse(j["entity_id"].get<std::string>());
  if (!j["event_type"].is_string()) bad("event_type must be a string");
  auto type = parse_event_type(j["event_type"].get<std::string>());
  if (!type) bad("unknown event_type");
  ev.event_type = *type;
  if (!j["source"].is_string()) bad("source must be a string");
  ev.source = j["source"].get<std::string>();

  const json& payload = j["payload"];
  if (!payload.is_object()) bad("payload must be an object");
  if (ev.event_type == EventType::Relate || ev.event_type == EventType::Unrelate) {
    if (payload.size() != 2 || !payload.contains("object") || !payload.contains("predicate") ||
        !payload["object"].is_string() || !payload["predicate"].is_string()) {
      bad("relation payload must be {object, predicate}");
    }
    auto pred = parse_predicate(payload["predicate"].get<std::string>());
    if (!pred) bad("unknown predicate");
    ev.payload = RelationPayload{*pred, EntityId::parse(payload["object"].get<std::string>())};
  } else {
    ev.payload = detail::attributes_from_json(payload);
  }
  return ev;
}

}  // namespace holocity
