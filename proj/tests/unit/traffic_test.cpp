#include <gtest/gtest.h>

#include <random>

#include "holocity/error.hpp"
#include "holocity/traffic/route.hpp"
#include "holocity/traffic/traffic.hpp"
#include "oracles.hpp"

using namespace holocity;
using namespace holocity::traffic;

namespace {

EntityId road(int i) { return EntityId(EntityKind::RoadSegment, "r" + std::to_string(i)); }

TrafficStore one_road() {
  TrafficStore ts;
  ts.register_segment(road(1), geo::Polyline({{0.0, 0.5}, {1.0, 0.5}}));
  return ts;
}

}  // namespace

TEST(Levels, Thresholds) {
  EXPECT_EQ(level_of(40), CongestionLevel::Smooth);
  EXPECT_EQ(level_of(39.999), CongestionLevel::Slow);
  EXPECT_EQ(level_of(20), CongestionLevel::Slow);
  EXPECT_EQ(level_of(5), CongestionLevel::Congested);
}

TEST(Ingest, ReplaceAndUnknownSegment) {
  auto ts = one_road();
  ts.ingest({road(1), 100, 50});
  EXPECT_EQ(ts.samples(road(1))->at(100), 50);
  ts.ingest({road(1), 100, 30});
  EXPECT_EQ(ts.samples(road(1))->at(100), 30);
  EXPECT_EQ(ts.samples(road(1))->size(), 1u);
  try {
    ts.ingest({road(9), 100, 30});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownSegment);
  }
  EXPECT_THROW(ts.ingest({road(1), 100, -1}), Error);
  EXPECT_THROW(ts.ingest({road(1), 100, std::nan("")}), Error);
  EXPECT_THROW(ts.ingest_batch({{road(1), 200, 10}, {road(9), 200, 10}}), Error);
  EXPECT_FALSE(ts.samples(road(1))->contains(200));  // nothing from the failed batch
}

TEST(Conditions, FreshnessWindow) {
  auto ts = one_road();
  EXPECT_EQ(ts.conditions_at(150).levels.at(road(1)), CongestionLevel::Unknown);
  ts.ingest({road(1), 100, 50});
  EXPECT_EQ(ts.conditions_at(150).levels.at(road(1)), CongestionLevel::Smooth);
  EXPECT_EQ(ts.conditions_at(100 + 10 * 60 * 1000).levels.at(road(1)), CongestionLevel::Smooth);
  EXPECT_EQ(ts.conditions_at(100 + 11 * 60 * 1000).levels.at(road(1)), CongestionLevel::Unknown);
  EXPECT_EQ(ts.conditions_at(99).levels.at(road(1)), CongestionLevel::Unknown);
}

TEST(Areal, CellMeans) {
  TrafficStore ts;
  ts.register_segment(road(1), geo::Polyline({{0.1, 0.1}, {0.4, 0.2}}));
  ts.register_segment(road(2), geo::Polyline({{0.2, 0.3}, {0.3, 0.4}}));
  ts.register_segment(road(3), geo::Polyline({{1.5, 1.5}, {1.9, 1.6}}));
  ts.ingest({road(1), 0, 10});
  ts.ingest({road(2), 0, 30});
  ts.ingest({road(3), 0, 50});
  const auto f = ts.areal_conditions(0, geo::BBox(0, 0, 2, 2), 1.0);
  ASSERT_EQ(f.levels.size(), 4u);
  EXPECT_EQ(f.levels[0], CongestionLevel::Slow);  // mean of 10 and 30
  EXPECT_DOUBLE_EQ(*f.mean_speed_kmh[0], 20.0);
  EXPECT_EQ(f.levels[1], CongestionLevel::Unknown);
  EXPECT_EQ(f.levels[2], CongestionLevel::Unknown);
  EXPECT_EQ(f.levels[3], CongestionLevel::Smooth);
}

TEST(Replay, FrameCounts) {
  auto ts = one_road();
  EXPECT_EQ(ts.replay_frames(0, 10, 100).size(), 1u);
  EXPECT_EQ(ts.replay_frames(5, 5, 1).size(), 1u);
  EXPECT_EQ(ts.replay_frames(0, 10, 5).size(), 3u);
  EXPECT_THROW(ts.replay_frames(10, 0, 5), Error);
  EXPECT_THROW(ts.replay_frames(0, 10, 0), Error);
}

TEST(Replay, FramesMatchPerTimestampOracle) {
  std::mt19937_64 rng(21);
  TrafficStore ts;
  for (int i = 0; i < 20; ++i) ts.register_segment(road(i), geo::Polyline({{0.01 * i, 0}, {0.01 * i, 0.01}}));
  std::vector<CongestionSample> samples;
  for (int k = 0; k < 600; ++k) {
    const CongestionSample s{road(static_cast<int>(rng() % 20)), static_cast<Millis>(rng() % 3'600'000),
                             static_cast<double>(rng() % 7000) / 100.0};
    samples.push_back(s);
    ts.ingest(s);
  }
  const auto frames = ts.replay_frames(0, 3'600'000, 90'000);
  ASSERT_EQ(frames.size(), 41u);
  for (const auto& f : frames) {
    EXPECT_EQ(f, ts.conditions_at(f.t));
    for (int i = 0; i < 20; ++i) EXPECT_EQ(f.levels.at(road(i)), oracle::level_at(samples, road(i), f.t));
  }
}

TEST(Route, MidpointOfStraightRoute) {
  // ~10 km along the equator.
  const double deg = 10'000.0 / (geo::kEarthRadiusM * 3.141592653589793 / 180.0);
  RouteSchedule sched(EntityId(EntityKind::SubwayLine, "l1"), geo::Polyline({{0, 0}, {deg, 0}}), 0, {20.0});
  const auto mid = route_position(sched, 15 * 60 * 1000);
  EXPECT_EQ(mid.status, RouteStatus::InTransit);
  EXPECT_NEAR(mid.arc_m, 5000.0, 1e-6);
  EXPECT_NEAR(mid.point.lon, deg / 2, 1e-9);
  const auto end = route_position(sched, 3 * 3600 * 1000);
  EXPECT_EQ(end.status, RouteStatus::Arrived);
  EXPECT_EQ(end.point.lon, deg);
  EXPECT_EQ(route_position(sched, -1).status, RouteStatus::NotDeparted);
  EXPECT_THROW(RouteSchedule(sched.line_id(), sched.path(), 0, {}), Error);
  EXPECT_THROW(RouteSchedule(sched.line_id(), sched.path(), 0, {0.0}), Error);
}

TEST(Route, StaysOnPolylineAndArcIsMonotone) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<geo::GeoPoint> pts = {{114.0, 22.5}};
    for (int i = 0; i < 6; ++i) pts.emplace_back(pts.back().lon + 0.002 + std::abs(u(rng)), pts.back().lat + u(rng));
    std::vector<double> speeds;
    for (int i = 0; i < 6; ++i) speeds.push_back(20 + static_cast<double>(rng() % 60));
    RouteSchedule s(EntityId(EntityKind::SubwayLine, "l1"), geo::Polyline(pts), 1000, speeds);
    const auto back = s.reversed(1000);
    for (const RouteSchedule* sched : {static_cast<const RouteSchedule*>(&s), &back}) {
      double prev = -1;
      const auto end = static_cast<Millis>(sched->total_duration_s() * 1000) + 5000;
      for (Millis t = 0; t <= end; t += 3000) {
        const auto p = route_position(*sched, t);
        EXPECT_LE(oracle::distance_to_polyline_deg(sched->path().points(), p.point), 1e-9);
        EXPECT_GE(p.arc_m, prev);
        prev = p.arc_m;
      }
      EXPECT_NEAR(prev, sched->total_length_m(), 1e-6);
    }
  }
}
