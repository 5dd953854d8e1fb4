#pragma once

// Reference implementations used by the tests. They are written directly
// from the contracts, share no code with the library beyond its value types,
// and favor obviousness over speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "holocity/geo/geometry.hpp"
#include "holocity/sdm/event.hpp"
#include "holocity/sdm/store.hpp"
#include "holocity/traffic/traffic.hpp"

namespace oracle {

using namespace holocity;

// ---- event sourcing ------------------------------------------------------

// Folds the events with timestamp <= t in log order and reports the live
// entities with the state each would have as of t.
inline Snapshot fold(const std::vector<EventRecord>& log, Millis t) {
  struct Entity {
    std::uint64_t version = 0;
    Millis from = 0;
    Attributes attrs;
    bool deleted = false;
  };
  struct Rel {
    EntityId s, o;
    Predicate p;
    Millis from;
    bool open;
  };
  std::map<EntityId, Entity> entities;
  std::vector<Rel> rels;
  for (const auto& e : log) {
    if (e.timestamp > t) continue;
    auto& ent = entities[e.entity_id];
    ent.version += 1;
    ent.from = e.timestamp;
    switch (e.event_type) {
      case EventType::Create:
        ent.attrs = std::get<Attributes>(e.payload);
        break;
      case EventType::Update:
        for (const auto& [k, v] : std::get<Attributes>(e.payload)) ent.attrs[k] = v;
        break;
      case EventType::Delete:
        ent.deleted = true;
        ent.attrs.clear();
        for (auto& r : rels) {
          if (r.open && (r.s == e.entity_id || r.o == e.entity_id)) r.open = false;
        }
        break;
      case EventType::Relate: {
        const auto& rp = std::get<RelationPayload>(e.payload);
        rels.push_back({e.entity_id, rp.object, rp.predicate, e.timestamp, true});
        break;
      }
      case EventType::Unrelate: {
        const auto& rp = std::get<RelationPayload>(e.payload);
        for (auto& r : rels) {
          if (r.open && r.s == e.entity_id && r.o == rp.object && r.p == rp.predicate) r.open = false;
        }
        break;
      }
    }
  }
  Snapshot snap;
  snap.at = t;
  for (const auto& [id, ent] : entities) {
    if (ent.deleted) continue;
    StateRecord s;
    s.entity_id = id;
    s.version = ent.version;
    s.valid = Interval{ent.from, std::nullopt};
    s.attributes = ent.attrs;
    snap.states.emplace(id, s);
  }
  for (const auto& r : rels) {
    if (r.open) snap.relations.push_back({r.s, r.p, r.o, Interval{r.from, std::nullopt}});
  }
  std::sort(snap.relations.begin(), snap.relations.end());
  return snap;
}

// Random but valid event log: ids 1..n, timestamps non-decreasing with
// frequent ties, every event legal for the entity's state at that point.
inline std::vector<EventRecord> random_log(std::size_t n_events, std::size_t n_entities, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::vector<EntityId> ids;
  for (std::size_t i = 0; i < n_entities; ++i) {
    ids.emplace_back(i % 3 == 0 ? EntityKind::Person : i % 3 == 1 ? EntityKind::House : EntityKind::Building,
                     "e" + std::to_string(i));
  }
  enum class Life { Absent, Live, Dead };
  std::vector<Life> life(n_entities, Life::Absent);
  std::size_t dead = 0;  // at most half the entities are ever deleted
  std::set<std::tuple<std::size_t, int, std::size_t>> open;
  std::map<std::tuple<std::size_t, int, std::size_t>, Millis> open_from;

  std::vector<EventRecord> log;
  Millis t = 1000;
  const char* keys[] = {"a", "b", "c"};
  while (log.size() < n_events) {
    if (below(3) == 0) t += static_cast<Millis>(below(50));
    const auto i = below(n_entities);
    EventRecord e;
    e.event_id = log.size() + 1;
    e.timestamp = t;
    e.entity_id = ids[i];
    e.source = "oracle";
    if (life[i] == Life::Dead) continue;
    if (life[i] == Life::Absent) {
      e.event_type = EventType::Create;
      e.payload = Attributes{{"a", static_cast<double>(below(100))}, {"b", std::string(1, char('x' + below(3)))}};
      life[i] = Life::Live;
    } else {
      const auto r = below(20);
      if (r < 9) {
        e.event_type = EventType::Update;
        Attributes a;
        a[keys[below(3)]] = static_cast<double>(below(100));
        if (below(4) == 0) a["flag"] = below(2) == 0;
        e.payload = a;
      } else if (r < 15) {
        const auto j = below(n_entities);
        if (j == i || life[j] != Life::Live) continue;
        const auto p = static_cast<int>(below(3));
        if (open.contains({i, p, j})) {
          if (open_from[{i, p, j}] >= t) continue;
          e.event_type = EventType::Unrelate;
          open.erase({i, p, j});
        } else {
          e.event_type = EventType::Relate;
          open.insert({i, p, j});
          open_from[{i, p, j}] = t;
        }
        e.payload = RelationPayload{static_cast<Predicate>(p), ids[j]};
      } else if (r == 15 && 2 * ++dead <= n_entities) {
        e.event_type = EventType::Delete;
        e.payload = Attributes{};
        life[i] = Life::Dead;
        for (auto it = open.begin(); it != open.end();) {
          if (std::get<0>(*it) == i || std::get<2>(*it) == i) {
            it = open.erase(it);
          } else {
            ++it;
          }
        }
      } else {
        continue;
      }
    }
    log.push_back(std::move(e));
  }
  return log;
}

// ---- geometry --------------------------------------------------------------

// Crossing-number ray cast plus an explicit boundary check.
inline bool on_edge(const geo::GeoPoint& a, const geo::GeoPoint& b, const geo::GeoPoint& p) {
  const double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
  if (cross != 0.0) return false;
  return std::min(a.lon, b.lon) <= p.lon && p.lon <= std::max(a.lon, b.lon) && std::min(a.lat, b.lat) <= p.lat &&
         p.lat <= std::max(a.lat, b.lat);
}

inline bool ray_cast(const std::vector<geo::GeoPoint>& ring, const geo::GeoPoint& p) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (on_edge(ring[i], ring[(i + 1) % n], p)) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = ring[i];
    const auto& b = ring[j];
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

inline double orient(const geo::GeoPoint& a, const geo::GeoPoint& b, const geo::GeoPoint& c) {
  return (b.lon - a.lon) * (c.lat - a.lat) - (b.lat - a.lat) * (c.lon - a.lon);
}

inline bool segments_cross(const geo::GeoPoint& a, const geo::GeoPoint& b, const geo::GeoPoint& c,
                           const geo::GeoPoint& d) {
  const double d1 = orient(c, d, a), d2 = orient(c, d, b), d3 = orient(a, b, c), d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  return on_edge(c, d, a) || on_edge(c, d, b) || on_edge(a, b, c) || on_edge(a, b, d);
}

inline bool in_box(const geo::BBox& box, const geo::GeoPoint& p) {
  return box.min_lon <= p.lon && p.lon <= box.max_lon && box.min_lat <= p.lat && p.lat <= box.max_lat;
}

inline bool path_hits_box(const std::vector<geo::GeoPoint>& pts, bool closed, const geo::BBox& box) {
  for (const auto& p : pts)
    if (in_box(box, p)) return true;
  const geo::GeoPoint c[4] = {{box.min_lon, box.min_lat}, {box.max_lon, box.min_lat}, {box.max_lon, box.max_lat},
                              {box.min_lon, box.max_lat}};
  const std::size_t n = pts.size();
  const std::size_t edges = closed ? n : n - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    for (int k = 0; k < 4; ++k) {
      if (segments_cross(pts[i], pts[(i + 1) % n], c[k], c[(k + 1) % 4])) return true;
    }
  }
  return false;
}

inline bool intersects(const geo::Geometry& g, const geo::BBox& box) {
  if (const auto* p = std::get_if<geo::GeoPoint>(&g)) return in_box(box, *p);
  if (const auto* l = std::get_if<geo::Polyline>(&g)) return path_hits_box(l->points(), false, box);
  const auto& ring = std::get<geo::Footprint>(g).ring();
  if (path_hits_box(ring, true, box)) return true;
  return ray_cast(ring, {box.min_lon, box.min_lat});  // box entirely inside the polygon
}

inline bool contains(const geo::Geometry& g, const geo::GeoPoint& p) {
  if (const auto* q = std::get_if<geo::GeoPoint>(&g)) return q->lon == p.lon && q->lat == p.lat;
  if (const auto* l = std::get_if<geo::Polyline>(&g)) {
    const auto& pts = l->points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (on_edge(pts[i], pts[i + 1], p)) return true;
    return false;
  }
  return ray_cast(std::get<geo::Footprint>(g).ring(), p);
}

// Haversine written out from the textbook formula in long double.
inline double great_circle_m(const geo::GeoPoint& a, const geo::GeoPoint& b) {
  const long double r = 6371000.0L;
  const long double rad = 3.141592653589793238462643383279502884L / 180.0L;
  const long double dlat = (b.lat - a.lat) * rad;
  const long double dlon = (b.lon - a.lon) * rad;
  const long double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                        std::cos(a.lat * rad) * std::cos(b.lat * rad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return static_cast<double>(2.0L * r * std::asin(std::sqrt(std::min(1.0L, h))));
}

// ---- statistics --------------------------------------------------------------

struct MeanVar {
  double mean;
  double stddev;
};

inline MeanVar two_pass(const std::vector<double>& v) {
  long double sum = 0;
  for (double x : v) sum += x;
  const long double mean = sum / static_cast<long double>(v.size());
  long double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(ss / static_cast<long double>(v.size())))};
}

// ---- graphs ------------------------------------------------------------------

// Undirected reachability by repeated relaxation over the edge list.
inline std::set<int> closure(int start, const std::vector<std::pair<int, int>>& edges) {
  std::set<int> reach{start};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [a, b] : edges) {
      if (reach.contains(a) && !reach.contains(b)) grew = reach.insert(b).second || grew;
      if (reach.contains(b) && !reach.contains(a)) grew = reach.insert(a).second || grew;
    }
  }
  return reach;
}

// ---- traffic -----------------------------------------------------------------

inline traffic::CongestionLevel level_at(const std::vector<traffic::CongestionSample>& samples,
                                         const EntityId& segment, Millis t) {
  // Later samples for the same (segment, t) replace earlier ones.
  std::optional<std::pair<Millis, double>> best;
  for (const auto& s : samples) {
    if (s.segment_id != segment || s.t > t) continue;
    if (!best || s.t >= best->first) best = std::make_pair(s.t, s.speed_kmh);
  }
  if (!best || t - best->first > 600000) return traffic::CongestionLevel::Unknown;
  if (best->second >= 40.0) return traffic::CongestionLevel::Smooth;
  if (best->second >= 20.0) return traffic::CongestionLevel::Slow;
  return traffic::CongestionLevel::Congested;
}

// Distance in degrees from p to the closest point of the polyline.
inline double distance_to_polyline_deg(const std::vector<geo::GeoPoint>& pts, const geo::GeoPoint& p) {
  double best = 1e300;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const long double ax = pts[i].lon, ay = pts[i].lat, bx = pts[i + 1].lon, by = pts[i + 1].lat;
    const long double dx = bx - ax, dy = by - ay;
    long double u = ((p.lon - ax) * dx + (p.lat - ay) * dy) / (dx * dx + dy * dy);
    u = std::clamp(u, 0.0L, 1.0L);
    const long double qx = ax + u * dx - p.lon, qy = ay + u * dy - p.lat;
    best = std::min(best, static_cast<double>(std::sqrt(qx * qx + qy * qy)));
  }
  return best;
}

// ---- tiles -------------------------------------------------------------------

struct TileXY {
  std::int64_t x, y;
};

inline TileXY slippy(double lon, double lat, int z) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double n = std::ldexp(1.0L, z);
  const long double rad = lat * pi / 180.0L;
  auto x = static_cast<std::int64_t>(std::floor((lon + 180.0L) / 360.0L * n));
  auto y = static_cast<std::int64_t>(std::floor((1.0L - std::log(std::tan(rad) + 1.0L / std::cos(rad)) / pi) / 2.0L * n));
  const auto max = static_cast<std::int64_t>(n) - 1;
  return {std::clamp<std::int64_t>(x, 0, max), std::clamp<std::int64_t>(y, 0, max)};
}

}  // namespace oracle
