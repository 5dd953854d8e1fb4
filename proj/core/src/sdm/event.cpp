#include "holocity/sdm/event.hpp"

#include <array>
#include <utility>

namespace holocity {
namespace {

constexpr std::array<std::pair<EventType, std::string_view>, 5> kEventTypes{{
    {EventType::Create, "Create"},
    {EventType::Update, "Update"},
    {EventType::Delete, "Delete"},
    {EventType::Relate, "Relate"},
    {EventType::Unrelate, "Unrelate"},
}};

constexpr std::array<std::pair<Predicate, std::string_view>, 6> kPredicates{{
    {Predicate::LivesIn, "LivesIn"},
    {Predicate::Owns, "Owns"},
    {Predicate::PartOf, "PartOf"},
    {Predicate::LocatedIn, "LocatedIn"},
    {Predicate::Operates, "Operates"},
    {Predicate::ConnectedTo, "ConnectedTo"},
}};

}  // namespace

std::string_view event_type_name(EventType type) noexcept {
  return kEventTypes[static_cast<std::size_t>(type)].second;
}

std::optional<EventType> parse_event_type(std::string_view text) noexcept {
  for (const auto& [type, name] : kEventTypes)
    if (name == text) return type;
  return std::nullopt;
}

std::string_view predicate_name(Predicate predicate) noexcept {
  return kPredicates[static_cast<std::size_t>(predicate)].second;
}

std::optional<Predicate> parse_predicate(std::string_view text) noexcept {
  for (const auto& [p, name] : kPredicates)
    if (name == text) return p;
  return std::nullopt;
}

}  // namespace holocity
