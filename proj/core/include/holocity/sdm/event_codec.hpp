#pragma once

#include <string>
#include <string_view>

#include "holocity/sdm/event.hpp"

namespace holocity {

// One event per line: a JSON object with keys in lexical order
// (entity_id, event_id, event_type, payload, source, timestamp), UTF-8, no
// trailing newline. Attribute payloads are objects of scalars with sorted
// keys; Relate/Unrelate payloads are {"object": <id>, "predicate": <name>}.
// Decoding a line produced by encode_event_line and encoding it again yields
// the same bytes.
std::string encode_event_line(const EventRecord& event);

// Throws Error(ParseError) on anything that is not a well-formed record.
EventRecord decode_event_line(std::string_view line);

}  // namespace holocity
