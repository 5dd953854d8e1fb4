#include <gtest/gtest.h>

#include <random>

#include "builders.hpp"
#include "holocity/error.hpp"
#include "oracles.hpp"

using namespace holocity;
using build::attrs;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

std::string str(const Attributes& a, const std::string& k) { return std::get<std::string>(a.at(k)); }

// The running household used by the basic examples.
build::Log household() {
  build::Log log;
  log.create("house:h1", 100, attrs({{"addr", std::string("A-101")}, {"owner", std::string("p1")}}));
  log.update("house:h1", 200, attrs({{"owner", std::string("p2")}}));
  return log;
}

}  // namespace

TEST(Store, CreateThenUpdateClosesPreviousInterval) {
  auto log = household();
  const auto h = log.store.history(EntityId::parse("house:h1"));
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].version, 1u);
  EXPECT_EQ(h[0].valid, (Interval{100, 200}));
  EXPECT_EQ(h[1].version, 2u);
  EXPECT_EQ(h[1].valid, (Interval{200, std::nullopt}));
  EXPECT_EQ(str(h[1].attributes, "owner"), "p2");
  EXPECT_EQ(str(h[1].attributes, "addr"), "A-101");  // merged
}

TEST(Store, UpdateOfUnknownEntity) {
  auto log = household();
  EXPECT_EQ(code_of([&] { log.update("house:h9", 300, {}); }), ErrorCode::UnknownEntity);
}

TEST(Store, StateAtHalfOpenBoundaries) {
  auto log = household();
  const auto h1 = EntityId::parse("house:h1");
  EXPECT_EQ(str(log.store.state_at(h1, 150)->attributes, "owner"), "p1");
  EXPECT_EQ(log.store.state_at(h1, 200)->version, 2u);
  EXPECT_FALSE(log.store.state_at(h1, 50));
}

TEST(Store, ReplayRange) {
  auto log = household();
  const auto snap = replay_range(log.store, 0, 200);
  ASSERT_EQ(snap.states.size(), 1u);
  EXPECT_EQ(snap.states.begin()->second.version, 2u);
  EXPECT_TRUE(replay_range(log.store, 0, 99).states.empty());
  EXPECT_EQ(code_of([&] { replay_range(log.store, 10, 5); }), ErrorCode::InvalidRange);
}

TEST(Store, RelationsAndInverseView) {
  auto log = household();
  log.create("person:p1", 90, attrs({{"name", std::string("Li")}}));
  log.relate("person:p1", Predicate::LivesIn, "house:h1", 100);
  const auto p1 = EntityId::parse("person:p1");
  const auto h1 = EntityId::parse("house:h1");
  auto out = log.store.relations_of(p1, Predicate::LivesIn, 150, Direction::Out);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].object, h1);
  auto in = log.store.relations_of(h1, Predicate::LivesIn, 150, Direction::In);
  ASSERT_EQ(in.size(), 1u);
  EXPECT_EQ(in[0].subject, p1);
  EXPECT_TRUE(log.store.relations_of(p1, Predicate::LivesIn, 50, Direction::Out).empty());

  EXPECT_EQ(code_of([&] { log.relate("person:p1", Predicate::LivesIn, "person:p1", 210); }),
            ErrorCode::SelfRelation);
  EXPECT_EQ(code_of([&] { log.relate("person:p1", Predicate::LivesIn, "house:h1", 210); }),
            ErrorCode::DuplicateRelation);

  log.unrelate("person:p1", Predicate::LivesIn, "house:h1", 300);
  EXPECT_TRUE(log.store.relations_of(p1, Predicate::LivesIn, 350, Direction::Out).empty());
  EXPECT_EQ(log.store.relations_of(p1, Predicate::LivesIn, 299, Direction::Out).size(), 1u);
  EXPECT_EQ(code_of([&] { log.unrelate("person:p1", Predicate::LivesIn, "house:h1", 400); }),
            ErrorCode::NoSuchRelation);
}

TEST(Store, HouseholdRecord) {
  auto log = household();
  log.create("person:p1", 100, attrs({{"name", std::string("Li")}}));
  log.create("building:b1", 100, attrs({{"floors", 6.0}}));
  log.relate("person:p1", Predicate::LivesIn, "house:h1", 100);
  log.relate("house:h1", Predicate::PartOf, "building:b1", 210);
  log.create("house:h2", 100, attrs({{"addr", std::string("A-102")}}));

  const auto rec = log.store.household_record(EntityId::parse("house:h1"), 250);
  EXPECT_EQ(str(rec.house.attributes, "addr"), "A-101");
  EXPECT_EQ(str(rec.house.attributes, "owner"), "p2");
  ASSERT_EQ(rec.residents.size(), 1u);
  EXPECT_EQ(rec.residents[0].entity_id.str(), "person:p1");
  ASSERT_TRUE(rec.building);
  EXPECT_EQ(rec.building->entity_id.str(), "building:b1");

  EXPECT_TRUE(log.store.household_record(EntityId::parse("house:h2"), 250).residents.empty());
  EXPECT_EQ(code_of([&] { log.store.household_record(EntityId::parse("building:b1"), 250); }),
            ErrorCode::WrongKind);
}

TEST(Store, DeleteIsTombstoneAndClosesRelations) {
  auto log = household();
  log.create("person:p1", 100);
  log.relate("person:p1", Predicate::LivesIn, "house:h1", 100);
  log.remove("house:h1", 500);
  const auto h1 = EntityId::parse("house:h1");
  EXPECT_FALSE(log.store.state_at(h1, 500));
  EXPECT_TRUE(log.store.state_at(h1, 499));
  EXPECT_EQ(log.store.history(h1).size(), 3u);
  EXPECT_TRUE(log.store.history(h1).back().tombstone);
  EXPECT_TRUE(log.store.relations_of(h1, std::nullopt, 500, Direction::In).empty());
  EXPECT_EQ(code_of([&] { log.update("house:h1", 600, {}); }), ErrorCode::DeletedEntity);
  EXPECT_EQ(code_of([&] { log.create("house:h1", 600); }), ErrorCode::DuplicateCreate);
  EXPECT_EQ(code_of([&] { log.relate("person:p1", Predicate::Owns, "house:h1", 600); }),
            ErrorCode::DeletedEntity);
}

TEST(Store, RejectsOutOfOrder) {
  auto log = household();
  auto e = log.event("house:h1", 300, EventType::Update, Attributes{});
  e.event_id += 1;
  EXPECT_EQ(code_of([&] { log.store.apply_event(e); }), ErrorCode::OutOfOrderEvent);
  EXPECT_EQ(code_of([&] { log.update("house:h1", 150, {}); }), ErrorCode::OutOfOrderEvent);
  EXPECT_EQ(log.store.log().size(), 2u);  // failed events leave no trace
}

TEST(Store, ValidateMatchesApply) {
  auto log = household();
  const auto bad = log.event("house:h9", 300, EventType::Update, Attributes{});
  EXPECT_EQ(code_of([&] { log.store.validate(bad); }), ErrorCode::UnknownEntity);
  const auto wrong_payload = log.event("house:h1", 300, EventType::Relate, Attributes{});
  EXPECT_EQ(code_of([&] { log.store.validate(wrong_payload); }), ErrorCode::InvalidArgument);
}

TEST(Store, ChangedBetween) {
  auto log = household();
  log.create("person:p1", 250);
  const auto ids = changed_between(log.store.log(), 200, 250);
  ASSERT_EQ(ids.size(), 2u);
  EXPECT_EQ(ids[0].str(), "house:h1");
}

// Random logs: incremental store equals replay equals the fold oracle.
class StoreProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(StoreProperty, ReplayMatchesIncrementalAndOracle) {
  const auto events = oracle::random_log(2000, 40, GetParam());
  Store store;
  for (const auto& e : events) store.apply_event(e);

  std::mt19937_64 rng(GetParam());
  const Millis last = events.back().timestamp;
  for (int i = 0; i < 30; ++i) {
    const Millis t = 900 + static_cast<Millis>(rng() % static_cast<std::uint64_t>(last - 800));
    const auto incremental = store.snapshot_at(t);
    EXPECT_EQ(replay_range(store, 0, t), incremental) << "t=" << t;
    const auto expected = oracle::fold(events, t);
    ASSERT_EQ(incremental.states.size(), expected.states.size()) << "t=" << t;
    for (const auto& [id, s] : expected.states) {
      const auto& got = incremental.states.at(id);
      EXPECT_EQ(got.version, s.version);
      EXPECT_EQ(got.valid, s.valid);
      EXPECT_EQ(got.attributes, s.attributes);
      EXPECT_EQ(store.state_at(id, t)->version, s.version);
    }
    EXPECT_EQ(incremental.relations, expected.relations) << "t=" << t;
  }
}

TEST_P(StoreProperty, IntervalsPartitionEachLifetime) {
  const auto events = oracle::random_log(2000, 40, GetParam() + 100);
  Store store;
  for (const auto& e : events) store.apply_event(e);
  for (const auto& id : store.entity_ids()) {
    const auto h = store.history(id);
    ASSERT_FALSE(h.empty());
    for (std::size_t i = 0; i < h.size(); ++i) {
      EXPECT_EQ(h[i].version, i + 1);
      if (i + 1 < h.size()) {
        ASSERT_TRUE(h[i].valid.to);
        EXPECT_EQ(*h[i].valid.to, h[i + 1].valid.from);
        EXPECT_LE(h[i].valid.from, *h[i].valid.to);
      } else {
        EXPECT_FALSE(h[i].valid.to);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, StoreProperty, ::testing::Values(1u, 2u, 3u));
