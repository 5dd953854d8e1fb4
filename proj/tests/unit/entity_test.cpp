#include <gtest/gtest.h>

#include "holocity/error.hpp"
#include "holocity/sdm/entity.hpp"
#include "holocity/sdm/event_codec.hpp"
#include "oracles.hpp"

using namespace holocity;

TEST(EntityId, CanonicalText) {
  EntityId h(EntityKind::House, "h1");
  EXPECT_EQ(h.str(), "house:h1");
  EXPECT_EQ(h.local_id(), "h1");
  EXPECT_EQ(EntityId::parse("power_node:n3").kind(), EntityKind::PowerNode);
  EXPECT_EQ(EntityId::parse("admin_region:d1s1").local_id(), "d1s1");
}

TEST(EntityId, ParseRejectsMalformed) {
  for (const char* bad : {"", "house", "house:", "dragon:x1", ":x"}) {
    EXPECT_FALSE(EntityId::try_parse(bad).has_value()) << bad;
  }
  try {
    EntityId::parse("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(EntityId, OrderingFollowsText) {
  EntityId a(EntityKind::Building, "b2");
  EntityId b(EntityKind::Building, "b10");
  EXPECT_LT(b, a);  // lexical, not numeric
  EXPECT_EQ(std::hash<EntityId>{}(a), std::hash<std::string>{}("building:b2"));
}

TEST(EntityKind, BothSpellingsParse) {
  for (EntityKind k : kAllEntityKinds) {
    EXPECT_EQ(parse_kind(kind_name(k)), k);
    EXPECT_EQ(parse_kind(kind_prefix(k)), k);
  }
  EXPECT_FALSE(parse_kind("Dragon"));
}

TEST(Scalar, Labels) {
  EXPECT_EQ(scalar_label(Scalar{std::string("x")}), "x");
  EXPECT_EQ(scalar_label(Scalar{true}), "true");
  EXPECT_EQ(scalar_label(Scalar{42.0}), "42");
  EXPECT_EQ(scalar_number(Scalar{2.5}), 2.5);
  EXPECT_FALSE(scalar_number(Scalar{std::string("2")}));
}

TEST(EventCodec, RoundTripIsByteStable) {
  const auto log = oracle::random_log(500, 20, 7);
  for (const auto& e : log) {
    const auto line = encode_event_line(e);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    const auto back = decode_event_line(line);
    EXPECT_EQ(back, e);
    EXPECT_EQ(encode_event_line(back), line);
  }
}

TEST(EventCodec, RejectsGarbage) {
  for (const char* bad : {"", "{", "[]", "{\"event_id\":1}", "not json at all"}) {
    try {
      decode_event_line(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
  }
}

TEST(Predicate, NamesRoundTrip) {
  for (auto p : {Predicate::LivesIn, Predicate::Owns, Predicate::PartOf, Predicate::LocatedIn, Predicate::Operates,
                 Predicate::ConnectedTo}) {
    EXPECT_EQ(parse_predicate(predicate_name(p)), p);
  }
  for (auto t : {EventType::Create, EventType::Update, EventType::Delete, EventType::Relate, EventType::Unrelate}) {
    EXPECT_EQ(parse_event_type(event_type_name(t)), t);
  }
}
