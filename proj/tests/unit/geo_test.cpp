#include <gtest/gtest.h>

#include <random>

#include "holocity/error.hpp"
#include "holocity/geo/index.hpp"
#include "oracles.hpp"

using namespace holocity;
using namespace holocity::geo;

namespace {

EntityId bid(const std::string& local) { return EntityId(EntityKind::Building, local); }

Footprint square(double x0, double y0, double x1, double y1) {
  return Footprint({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

std::vector<IndexEntry> random_entries(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<IndexEntry> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u(rng), y = u(rng);
    const double w = 0.001 + u(rng) * 0.05, h = 0.001 + u(rng) * 0.05;
    Geometry g;
    switch (i % 3) {
      case 0:
        g = GeoPoint(x, y);
        break;
      case 1:
        g = Polyline({{x, y}, {x + w, y + h * 0.3}, {x + w * 0.4, y + h}});
        break;
      default:
        // Convex quad, never self-intersecting.
        g = Footprint({{x, y}, {x + w, y + h * 0.2}, {x + w * 0.8, y + h}, {x + w * 0.1, y + h * 0.7}});
    }
    out.push_back({bid("b" + std::to_string(i)), g, Band::Above});
  }
  return out;
}

}  // namespace

TEST(Geometry, ConstructorsEnforceRanges) {
  EXPECT_THROW(GeoPoint(181, 0), Error);
  EXPECT_THROW(GeoPoint(0, 91), Error);
  EXPECT_THROW(BBox(1, 0, 0, 1), Error);
  EXPECT_THROW(Polyline({{0, 0}}), Error);
  EXPECT_THROW(Footprint({{0, 0}, {1, 0}}), Error);
}

TEST(Geometry, SelfIntersectingRingRejected) {
  try {
    Footprint({{0, 0}, {1, 1}, {1, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidGeometry);
  }
}

TEST(Geometry, HaversineOneDegreeOfLatitude) {
  const double expected = 2.0 * 3.14159265358979323846 * kEarthRadiusM / 360.0;  // ~111,195 m
  EXPECT_NEAR(haversine_m({0, 0}, {0, 1}), expected, 1e-6);
  EXPECT_NEAR(haversine_m({114.0, 22.5}, {114.1, 22.6}), oracle::great_circle_m({114.0, 22.5}, {114.1, 22.6}),
              1e-6);
}

TEST(Index, EmptyQueries) {
  GeoIndex idx;
  EXPECT_TRUE(idx.query_bbox({0, 0, 1, 1}).empty());
  EXPECT_TRUE(idx.query_point({0.5, 0.5}).empty());
  EXPECT_TRUE(idx.nearest_k({0, 0}, 3).empty());
}

TEST(Index, PointThenReplace) {
  GeoIndex idx;
  idx.insert({bid("p"), GeoPoint(0.5, 0.5), Band::Above});
  EXPECT_EQ(idx.query_bbox({0, 0, 1, 1}), std::vector<EntityId>{bid("p")});
  idx.insert({bid("p"), GeoPoint(2.5, 2.5), Band::Above});
  EXPECT_TRUE(idx.query_bbox({0, 0, 1, 1}).empty());
  EXPECT_EQ(idx.query_bbox({2, 2, 3, 3}), std::vector<EntityId>{bid("p")});
  EXPECT_EQ(idx.size(), 1u);
  EXPECT_TRUE(idx.erase(bid("p")));
  EXPECT_EQ(idx.size(), 0u);
}

TEST(Index, FootprintInsideBoxAndPointInSquare) {
  GeoIndex idx;
  idx.insert({bid("sq"), square(0, 0, 1, 1), Band::Above});
  EXPECT_EQ(idx.query_bbox({-1, -1, 2, 2}).size(), 1u);
  EXPECT_EQ(idx.query_bbox({0.2, 0.2, 0.3, 0.3}).size(), 1u);  // box inside the polygon
  EXPECT_EQ(idx.query_point({0.5, 0.5}), std::vector<EntityId>{bid("sq")});
  EXPECT_EQ(idx.query_point({1, 1}).size(), 1u);  // vertex counts as inside
  EXPECT_EQ(idx.query_point({1, 0.5}).size(), 1u);  // edge too
  EXPECT_TRUE(idx.query_point({1.0001, 0.5}).empty());
}

TEST(Index, BandFilter) {
  GeoIndex idx;
  idx.insert({bid("up"), square(0, 0, 1, 1), Band::Above});
  idx.insert({EntityId(EntityKind::PipelineSegment, "down"), Polyline({{0, 0.5, -3}, {1, 0.5, -3}}), Band::Below});
  EXPECT_EQ(idx.query_bbox({0, 0, 1, 1}).size(), 2u);
  EXPECT_EQ(idx.query_bbox({0, 0, 1, 1}, Band::Below).size(), 1u);
  EXPECT_EQ(band_for(Polyline({{0, 0, -3}, {1, 0, -3}})), Band::Below);
  EXPECT_EQ(band_for(square(0, 0, 1, 1), -2.0), Band::Below);
}

TEST(Index, NearestK) {
  GeoIndex idx;
  idx.insert({bid("a"), GeoPoint(0, 1), Band::Above});
  EXPECT_EQ(idx.nearest_k({0, 0}, 1).at(0).id, bid("a"));
  idx.insert({bid("b"), GeoPoint(0, 2), Band::Above});
  idx.insert({bid("c"), GeoPoint(0, -1), Band::Above});  // tie with a
  const auto all = idx.nearest_k({0, 0}, 10);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].id, bid("a"));
  EXPECT_EQ(all[1].id, bid("c"));
  EXPECT_EQ(all[2].id, bid("b"));
  EXPECT_NEAR(all[0].distance_m, oracle::great_circle_m({0, 0}, {0, 1}), 1e-6);
}

TEST(Index, MatchesLinearScan) {
  std::mt19937_64 rng(11);
  auto entries = random_entries(rng, 1000);
  GeoIndex idx;
  idx.bulk_load(entries);
  std::uniform_real_distribution<double> u(-0.05, 1.05);
  for (int q = 0; q < 200; ++q) {
    double a = u(rng), b = u(rng), c = u(rng) * 0.2, d = u(rng) * 0.2;
    const BBox box(a, b, a + std::abs(c), b + std::abs(d));
    std::vector<EntityId> expected;
    for (const auto& e : entries)
      if (oracle::intersects(e.geometry, box)) expected.push_back(e.id);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(idx.query_bbox(box), expected);

    const GeoPoint p(u(rng), u(rng));
    std::vector<EntityId> hit;
    for (const auto& e : entries)
      if (oracle::contains(e.geometry, p)) hit.push_back(e.id);
    std::sort(hit.begin(), hit.end());
    EXPECT_EQ(idx.query_point(p), hit);
  }
}

TEST(Geometry, RingContainsMatchesRayCast) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    // Star-shaped polygon around a centre: simple by construction.
    const double cx = u(rng), cy = u(rng);
    std::vector<GeoPoint> ring;
    const int n = 3 + static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) {
      const double ang = 2 * 3.141592653589793 * (k + 0.5 * u(rng)) / n;
      const double r = 0.05 + 0.1 * u(rng);
      ring.emplace_back(cx + r * std::cos(ang), cy + r * std::sin(ang));
    }
    const GeoPoint p(cx + (u(rng) - 0.5) * 0.3, cy + (u(rng) - 0.5) * 0.3);
    EXPECT_EQ(ring_contains(ring, p), oracle::ray_cast(ring, p));
    EXPECT_TRUE(ring_contains(ring, ring[0]));
  }
}

TEST(AdminPartition, AssignAndTieBreak) {
  GeoIndex idx;
  const auto ar = [](const char* s) { return EntityId(EntityKind::AdminRegion, s); };
  idx.add_admin_region(ar("d1"), AdminLevel::District, std::nullopt, square(0, 0, 2, 2));
  idx.add_admin_region(ar("s1"), AdminLevel::Street, ar("d1"), square(0, 0, 2, 2));
  idx.add_admin_region(ar("c1"), AdminLevel::Community, ar("s1"), square(0, 0, 2, 2));
  idx.add_admin_region(ar("g1"), AdminLevel::Grid, ar("c1"), square(0, 0, 1, 2));
  idx.add_admin_region(ar("g2"), AdminLevel::Grid, ar("c1"), square(1, 0, 2, 2));

  const auto path = idx.assign_admin_path({0.5, 0.5});
  EXPECT_EQ(path.district, ar("d1"));
  EXPECT_EQ(path.street, ar("s1"));
  EXPECT_EQ(path.community, ar("c1"));
  EXPECT_EQ(path.grid_cell, ar("g1"));

  const GeoPoint edge(1.0, 0.5);
  EXPECT_TRUE(ring_contains(idx.admin_region_area(ar("g1"))->ring(), edge));
  EXPECT_TRUE(ring_contains(idx.admin_region_area(ar("g2"))->ring(), edge));
  EXPECT_EQ(idx.assign_admin_path(edge).grid_cell, ar("g1"));

  try {
    idx.assign_admin_path({5, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unassigned);
  }
  EXPECT_TRUE(idx.query_point({0.5, 0.5}).empty());  // regions are not objects
  EXPECT_EQ(idx.admin_regions(AdminLevel::Grid).size(), 2u);
}
