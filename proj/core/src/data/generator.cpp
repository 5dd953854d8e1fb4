#include "holocity/data/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "holocity/data/prng.hpp"
#include "holocity/error.hpp"
#include "holocity/geo/index.hpp"
#include "holocity/sdm/event_codec.hpp"

namespace holocity::data {

namespace {

constexpr Millis kMinute = 60'000;
constexpr Millis kSampleStep = 5 * kMinute;
constexpr Millis kTrafficSpan = 120 * kMinute;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidSpec, "bad number for " + std::string(what) + ": '" + t + "'");
  }
  return v;
}

std::int64_t parse_count(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::InvalidSpec, "bad count for " + std::string(what) + ": '" + t + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

geo::Footprint rect(double w, double s, double e, double n) {
  return geo::Footprint({{w, s}, {e, s}, {e, n}, {w, n}});
}

// Splits [lo, hi] into n pieces whose shared edges are the same rounded value.
std::vector<double> cuts(double lo, double hi, std::int64_t n) {
  std::vector<double> c;
  c.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t i = 0; i <= n; ++i) {
    c.push_back(i == n ? round7(hi) : round7(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n)));
  }
  return c;
}

// Plan of the synthetic city, built before any event is written so that
// attributes can refer to relations (a house's owner name).
class CityBuilder {
 public:
  explicit CityBuilder(const GenSpec& spec) : spec_(spec), c_(spec.counts), rng_(spec.seed) {}

  GeneratedCity build() {
    admin_regions();
    buildings();
    houses_and_rooms();
    persons();
    companies();
    roads();
    pipelines();
    subway();
    power();
    urban_events();
    emit_relations();
    history();
    traffic_samples();
    city_.end_time = std::max(last_t_, city_.samples.empty() ? kGenerationEpoch : city_.samples.back().t);
    return std::move(city_);
  }

 private:
  struct Building {
    EntityId id;
    geo::BBox box;
    double height_m = 0.0;
    EntityId cell;
  };
  struct HousePlan {
    EntityId id;
    std::size_t building = 0;
    int unit = 0;
  };
  struct RoomPlan {
    EntityId id;
    EntityId house;
  };
  struct RoadPlan {
    EntityId id;
    double base_kmh = 0.0;
  };

  struct Region {
    EntityId id;
    AdminLevel level;
    std::optional<EntityId> parent;
    geo::BBox box;
  };

  struct Relation {
    EntityId subject;
    Predicate predicate;
    EntityId object;
  };

  void create(const EntityId& id, Attributes attrs) {
    emit(kGenerationEpoch, id, EventType::Create, std::move(attrs));
  }

  void emit(Millis t, const EntityId& id, EventType type, EventPayload payload) {
    EventRecord e;
    e.event_id = city_.events.size() + 1;
    e.timestamp = t;
    e.entity_id = id;
    e.event_type = type;
    e.payload = std::move(payload);
    e.source = "gen";
    city_.events.push_back(std::move(e));
    last_t_ = std::max(last_t_, t);
  }

  void relate(const EntityId& s, Predicate p, const EntityId& o) { relations_.push_back({s, p, o}); }

  geo::GeoPoint random_point(double inset = 0.0) {
    const auto& b = spec_.bbox;
    const double dx = b.width() * inset;
    const double dy = b.height() * inset;
    return {round7(rng_.uniform(b.min_lon + dx, b.max_lon - dx)), round7(rng_.uniform(b.min_lat + dy, b.max_lat - dy))};
  }

  geo::GeoPoint clamp(double lon, double lat, double alt = 0.0) const {
    const auto& b = spec_.bbox;
    return {round7(std::clamp(lon, b.min_lon, b.max_lon)), round7(std::clamp(lat, b.min_lat, b.max_lat)), alt};
  }

  EntityId grid_cell_at(const geo::GeoPoint& p) const { return admin_.assign_admin_path(p).grid_cell; }

  // Random walk of `legs` steps of 300 to 1500 m; repeated vertices after
  // clamping to the bbox are dropped.
  std::vector<geo::GeoPoint> walk(std::size_t legs, double alt) {
    auto start = random_point(0.02);
    std::vector<geo::GeoPoint> pts{{start.lon, start.lat, alt}};
    double heading = rng_.uniform(0.0, 2.0 * std::numbers::pi);
    const double m_per_deg = 2.0 * std::numbers::pi * geo::kEarthRadiusM / 360.0;
    for (std::size_t i = 0; i < legs; ++i) {
      heading += rng_.uniform(-0.6, 0.6);
      const double d = rng_.uniform(300.0, 1500.0) / m_per_deg;
      const auto& last = pts.back();
      const auto next = clamp(last.lon + d * std::cos(heading) / std::cos(last.lat * std::numbers::pi / 180.0),
                              last.lat + d * std::sin(heading), alt);
      if (next.lon != last.lon || next.lat != last.lat) pts.push_back(next);
    }
    if (pts.size() < 2) {
      const auto& b = spec_.bbox;
      pts.push_back(clamp(b.min_lon + b.width() * 0.5, b.min_lat + b.height() * 0.5, alt));
      if (pts[0].lon == pts[1].lon && pts[0].lat == pts[1].lat) pts[1] = clamp(b.min_lon, b.min_lat, alt);
    }
    return pts;
  }

  void add_feature(FeatureRecord f) { city_.features.push_back(std::move(f)); }

  void subdivide(const geo::BBox& box, AdminLevel level, const std::optional<EntityId>& parent,
                 const std::string& prefix, std::vector<Region>& out) {
    static constexpr char kLetters[] = {'d', 's', 'c', 'g'};
    static constexpr std::int64_t GenCounts::*kCounts[] = {&GenCounts::districts, &GenCounts::streets_per_district,
                                                          &GenCounts::communities_per_street,
                                                          &GenCounts::grids_per_community};
    const auto li = static_cast<std::size_t>(level);
    const std::int64_t n = c_.*kCounts[li];
    const bool along_lon = box.width() * std::cos(box.min_lat * std::numbers::pi / 180.0) >= box.height();
    const auto c = along_lon ? cuts(box.min_lon, box.max_lon, n) : cuts(box.min_lat, box.max_lat, n);
    for (std::int64_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const geo::BBox piece = along_lon ? geo::BBox(c[k], box.min_lat, c[k + 1], box.max_lat)
                                        : geo::BBox(box.min_lon, c[k], box.max_lon, c[k + 1]);
      const std::string local = prefix + kLetters[li] + std::to_string(i + 1);
      const EntityId id(EntityKind::AdminRegion, local);
      out.push_back({id, level, parent, piece});
      if (level != AdminLevel::Grid) subdivide(piece, static_cast<AdminLevel>(li + 1), id, local, out);
    }
  }

  void admin_regions() {
    const auto& b = spec_.bbox;
    const geo::BBox root(round7(b.min_lon), round7(b.min_lat), round7(b.max_lon), round7(b.max_lat));
    std::vector<Region> regions;
    subdivide(root, AdminLevel::District, std::nullopt, "", regions);
    std::stable_sort(regions.begin(), regions.end(),
                     [](const Region& a, const Region& r) { return a.level < r.level; });
    for (const auto& r : regions) {
      auto area = rect(r.box.min_lon, r.box.min_lat, r.box.max_lon, r.box.max_lat);
      admin_.add_admin_region(r.id, r.level, r.parent, area);
      FeatureRecord f;
      f.id = r.id;
      f.geometry = area;
      f.admin_level = r.level;
      f.admin_parent = r.parent;
      add_feature(std::move(f));
      std::string name(admin_level_name(r.level));
      name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
      create(r.id, {{"level", std::string(admin_level_name(r.level))}, {"name", name + " " + std::string(r.id.local_id())}});
      if (r.parent) relate(r.id, Predicate::LocatedIn, *r.parent);
    }
  }

  void buildings() {
    const auto n = c_.buildings;
    if (n == 0) return;
    const auto& b = spec_.bbox;
    const double aspect = b.width() * std::cos(b.min_lat * std::numbers::pi / 180.0) / b.height();
    const auto cols = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::sqrt(n * aspect))));
    const auto rows = (n + cols - 1) / cols;
    const double cw = b.width() / static_cast<double>(cols);
    const double ch = b.height() / static_cast<double>(rows);
    static const std::vector<std::string> kUses{"residential", "residential", "residential", "mixed", "commercial"};
    for (std::int64_t i = 0; i < n; ++i) {
      const double cx = b.min_lon + cw * (static_cast<double>(i % cols) + 0.5 + rng_.uniform(-0.2, 0.2));
      const double cy = b.min_lat + ch * (static_cast<double>(i / cols) + 0.5 + rng_.uniform(-0.2, 0.2));
      const double hw = cw * rng_.uniform(0.04, 0.14);
      const double hh = ch * rng_.uniform(0.04, 0.14);
      const double w = round7(cx - hw), e = round7(cx + hw), s = round7(cy - hh), nn = round7(cy + hh);
      const double height = std::round(rng_.uniform(9.0, 150.0));
      Building bd{EntityId(EntityKind::Building, "b" + std::to_string(i + 1)), {w, s, e, nn}, height, {}};
      FeatureRecord f;
      f.id = bd.id;
      f.geometry = rect(w, s, e, nn);
      f.height_m = height;
      add_feature(std::move(f));
      const auto cell = grid_cell_at(geo::centroid_of(city_.features.back().geometry));
      create(bd.id, {{"name", "Building " + std::to_string(i + 1)},
                     {"height_m", height},
                     {"floors", std::max(1.0, std::floor(height / 3.0))},
                     {"use", rng_.pick(kUses)}});
      relate(bd.id, Predicate::LocatedIn, cell);
      bd.cell = cell;
      buildings_.push_back(std::move(bd));
    }
  }

  void houses_and_rooms() {
    const auto h = c_.households_per_building;
    const auto r = c_.rooms_per_house;
    for (std::size_t bi = 0; bi < buildings_.size(); ++bi) {
      const auto& bd = buildings_[bi];
      const auto& box = bd.box;
      const auto hc = cuts(box.min_lon, box.max_lon, std::max<std::int64_t>(h, 1));
      for (std::int64_t k = 0; k < h; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const EntityId id(EntityKind::House, std::string(bd.id.local_id()) + "h" + std::to_string(k + 1));
        houses_.push_back({id, bi, static_cast<int>(k + 1)});
        std::optional<geo::Footprint> area;
        if (hc[ku] < hc[ku + 1]) area = rect(hc[ku], box.min_lat, hc[ku + 1], box.max_lat);
        if (area) {
          FeatureRecord f;
          f.id = id;
          f.geometry = *area;
          f.height_m = bd.height_m;
          add_feature(std::move(f));
        }
        const auto rc = cuts(box.min_lat, box.max_lat, std::max<std::int64_t>(r, 1));
        for (std::int64_t q = 0; q < r; ++q) {
          const auto qu = static_cast<std::size_t>(q);
          const EntityId room(EntityKind::Room, std::string(id.local_id()) + "r" + std::to_string(q + 1));
          rooms_.push_back({room, id});
          if (area && rc[qu] < rc[qu + 1]) {
            FeatureRecord f;
            f.id = room;
            f.geometry = rect(hc[ku], rc[qu], hc[ku + 1], rc[qu + 1]);
            f.height_m = 3.0;
            add_feature(std::move(f));
          }
        }
      }
    }
  }

  struct PersonPlan {
    EntityId id;
    std::size_t house = 0;
    Attributes attrs;
  };

  Attributes person_attrs(const std::string& name) {
    static const std::vector<std::string> kNationalities{"CN", "CN", "CN", "CN", "CN", "CN", "CN", "CN", "CN",
                                                         "CN", "CN", "CN", "HK", "US", "GB", "JP", "KR", "IN"};
    const double age = static_cast<double>(rng_.below(91));
    std::string education;
    if (age < 6) {
      education = "none";
    } else if (age < 12) {
      education = "primary";
    } else if (age < 22) {
      education = "secondary";
    } else {
      static const std::vector<std::string> kAdult{"primary", "secondary", "secondary", "bachelor",
                                                   "bachelor", "master", "doctorate"};
      education = rng_.pick(kAdult);
    }
    std::string marriage = "single";
    if (age >= 22) {
      const double u = rng_.uniform01();
      marriage = u < 0.6 ? "married" : u < 0.8 ? "single" : u < 0.92 ? "divorced" : "widowed";
    }
    std::string employment;
    if (age < 18) {
      employment = "student";
    } else if (age >= 60) {
      employment = "retired";
    } else {
      const double u = rng_.uniform01();
      employment = u < 0.8 ? "employed" : u < 0.9 ? "unemployed" : "student";
    }
    return {{"name", name},
            {"age", age},
            {"education", education},
            {"nationality", rng_.pick(kNationalities)},
            {"marriage", marriage},
            {"employment", employment}};
  }

  void persons() {
    const auto nh = houses_.size();
    const auto total = static_cast<std::size_t>(std::llround(static_cast<double>(nh) * c_.persons_per_household));
    std::vector<std::size_t> home;
    home.reserve(total);
    const std::size_t base = std::min(total, nh);
    for (std::size_t i = 0; i < base; ++i) home.push_back(total >= nh ? i : rng_.below(nh));
    for (std::size_t i = base; i < total; ++i) home.push_back(rng_.below(nh));
    std::sort(home.begin(), home.end());

    residents_.assign(nh, {});
    for (std::size_t i = 0; i < total; ++i) {
      const EntityId id(EntityKind::Person, "p" + std::to_string(i + 1));
      persons_.push_back({id, home[i], person_attrs("Resident " + std::to_string(i + 1))});
      residents_[home[i]].push_back(i);
    }

    for (std::size_t i = 0; i < nh; ++i) {
      const auto& hs = houses_[i];
      const auto& bd = buildings_[hs.building];
      Attributes attrs{{"addr", "Building " + std::string(bd.id.local_id().substr(1)) + ", unit " +
                                    std::to_string(hs.unit) + ", " + std::string(bd.cell.local_id())}};
      if (!residents_[i].empty()) {
        attrs["owner"] = std::get<std::string>(persons_[residents_[i].front()].attrs.at("name"));
      }
      create(hs.id, std::move(attrs));
      relate(hs.id, Predicate::PartOf, bd.id);
    }
    for (const auto& rm : rooms_) {
      create(rm.id, {{"name", "Room " + std::string(rm.id.local_id())}});
      relate(rm.id, Predicate::PartOf, rm.house);
    }
    for (const auto& p : persons_) {
      create(p.id, p.attrs);
      relate(p.id, Predicate::LivesIn, houses_[p.house].id);
    }
    for (std::size_t i = 0; i < nh; ++i) {
      if (!residents_[i].empty()) relate(persons_[residents_[i].front()].id, Predicate::Owns, houses_[i].id);
    }
  }

  void companies() {
    static const std::vector<std::string> kIndustries{"retail", "logistics", "software", "finance", "manufacturing",
                                                      "hospitality"};
    for (std::int64_t i = 0; i < c_.companies; ++i) {
      if (buildings_.empty()) break;
      const EntityId id(EntityKind::Company, "co" + std::to_string(i + 1));
      create(id, {{"name", "Company " + std::to_string(i + 1)},
                  {"industry", rng_.pick(kIndustries)},
                  {"employees", static_cast<double>(5 + rng_.below(500))}});
      relate(id, Predicate::LocatedIn, buildings_[rng_.below(buildings_.size())].id);
    }
  }

  void roads() {
    static const std::vector<std::string> kClasses{"arterial", "collector", "local", "local"};
    for (std::int64_t i = 0; i < c_.road_segments; ++i) {
      const EntityId id(EntityKind::RoadSegment, "r" + std::to_string(i + 1));
      auto pts = walk(1 + rng_.below(3), 0.0);
      const auto cell = grid_cell_at(pts.front());
      FeatureRecord f;
      f.id = id;
      f.geometry = geo::Polyline(std::move(pts));
      add_feature(std::move(f));
      const auto& cls = rng_.pick(kClasses);
      create(id, {{"name", "Road " + std::to_string(i + 1)},
                  {"class", cls},
                  {"lanes", static_cast<double>(cls == "arterial" ? 6 : cls == "collector" ? 4 : 2)}});
      relate(id, Predicate::LocatedIn, cell);
      roads_.push_back({id, rng_.uniform(15.0, 70.0)});
    }
  }

  void pipelines() {
    static const std::vector<std::string> kNetworks{"water", "gas", "sewer", "heat"};
    static const std::vector<std::string> kMaterials{"steel", "pvc", "cast_iron", "concrete"};
    for (std::int64_t i = 0; i < c_.pipeline_segments; ++i) {
      const EntityId id(EntityKind::PipelineSegment, "pl" + std::to_string(i + 1));
      auto pts = walk(1 + rng_.below(2), -3.0);
      const auto cell = grid_cell_at(pts.front());
      FeatureRecord f;
      f.id = id;
      f.geometry = geo::Polyline(std::move(pts));
      f.base_alt = -3.0;
      add_feature(std::move(f));
      create(id, {{"network", rng_.pick(kNetworks)},
                  {"material", rng_.pick(kMaterials)},
                  {"diameter_mm", static_cast<double>(100 + 50 * rng_.below(12))}});
      relate(id, Predicate::LocatedIn, cell);
    }
  }

  void subway() {
    static const std::vector<std::string> kColors{"green", "blue", "red", "orange", "purple", "brown"};
    const auto& b = spec_.bbox;
    for (std::int64_t i = 0; i < c_.subway_lines; ++i) {
      const EntityId id(EntityKind::SubwayLine, "l" + std::to_string(i + 1));
      const bool east_west = i % 2 == 0;
      const std::size_t stations = 6 + rng_.below(5);
      const double across = rng_.uniform(0.15, 0.85);
      std::vector<geo::GeoPoint> pts;
      for (std::size_t k = 0; k < stations; ++k) {
        const double along = (static_cast<double>(k) + rng_.uniform(-0.2, 0.2)) / static_cast<double>(stations - 1);
        const double a = std::clamp(along, 0.0, 1.0);
        const double wobble = std::clamp(across + rng_.uniform(-0.05, 0.05), 0.0, 1.0);
        auto p = east_west ? clamp(b.min_lon + a * b.width(), b.min_lat + wobble * b.height(), -15.0)
                           : clamp(b.min_lon + wobble * b.width(), b.min_lat + a * b.height(), -15.0);
        if (!pts.empty() && pts.back().lon == p.lon && pts.back().lat == p.lat) continue;
        pts.push_back(p);
      }
      ScheduleSpec schedule;
      schedule.departure = kGenerationEpoch + static_cast<Millis>(i) * 10 * kMinute;
      for (std::size_t k = 1; k < pts.size(); ++k) schedule.leg_speeds_kmh.push_back(std::round(rng_.uniform(30.0, 80.0)));
      FeatureRecord f;
      f.id = id;
      f.geometry = geo::Polyline(std::move(pts));
      f.base_alt = -15.0;
      f.schedule = std::move(schedule);
      add_feature(std::move(f));
      create(id, {{"name", "Line " + std::to_string(i + 1)}, {"color", kColors[static_cast<std::size_t>(i) % kColors.size()]}});
    }
  }

  void power() {
    static const std::vector<std::string> kTypes{"substation", "transformer", "transformer", "transformer"};
    std::vector<EntityId> nodes;
    for (std::int64_t i = 0; i < c_.power_nodes; ++i) {
      const EntityId id(EntityKind::PowerNode, "n" + std::to_string(i + 1));
      const auto p = random_point(0.01);
      FeatureRecord f;
      f.id = id;
      f.geometry = p;
      add_feature(std::move(f));
      const auto& type = i == 0 ? kTypes[0] : rng_.pick(kTypes);
      create(id, {{"type", type}, {"voltage_kv", type == "substation" ? 110.0 : 10.0}});
      relate(id, Predicate::LocatedIn, grid_cell_at(p));
      nodes.push_back(id);
    }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const auto j = rng_.below(i);
      edges.insert({j, i});
      relate(nodes[i], Predicate::ConnectedTo, nodes[j]);
    }
    const std::size_t extra = nodes.size() / 10;
    for (std::size_t k = 0; k < extra && nodes.size() > 2; ++k) {
      auto a = rng_.below(nodes.size());
      auto c = rng_.below(nodes.size());
      if (a == c) continue;
      if (!edges.insert({std::min(a, c), std::max(a, c)}).second) continue;
      relate(nodes[a], Predicate::ConnectedTo, nodes[c]);
    }
  }

  void urban_events() {
    static const std::vector<std::string> kCategories{"fire", "flooding", "traffic_accident", "power_outage",
                                                      "construction", "public_gathering"};
    for (std::int64_t i = 0; i < c_.urban_events; ++i) {
      const EntityId id(EntityKind::UrbanEvent, "e" + std::to_string(i + 1));
      const auto p = random_point(0.01);
      create(id, {{"category", rng_.pick(kCategories)},
                  {"severity", static_cast<double>(1 + rng_.below(5))},
                  {"status", "open"},
                  {"lon", p.lon},
                  {"lat", p.lat}});
      relate(id, Predicate::LocatedIn, grid_cell_at(p));
      events_.push_back(id);
    }
  }

  void emit_relations() {
    for (const auto& r : relations_) emit(kGenerationEpoch, r.subject, EventType::Relate, RelationPayload{r.predicate, r.object});
  }

  // Updates, moves and resolved incidents spread over the traffic window.
  void history() {
    const std::size_t updates = persons_.size() / 10;
    const std::size_t moves = houses_.size() > 1 ? persons_.size() / 50 : 0;
    const std::size_t resolved = events_.size() / 2;
    const std::size_t steps = updates + moves + resolved;
    if (steps == 0) return;
    const Millis step = std::max<Millis>(1, kTrafficSpan / static_cast<Millis>(steps + 1));
    auto schedule = [&](std::size_t k) { return kGenerationEpoch + step * static_cast<Millis>(k + 1); };

    std::vector<int> kinds;
    kinds.insert(kinds.end(), updates, 0);
    kinds.insert(kinds.end(), moves, 1);
    kinds.insert(kinds.end(), resolved, 2);
    for (std::size_t i = kinds.size(); i > 1; --i) std::swap(kinds[i - 1], kinds[rng_.below(i)]);

    std::set<std::size_t> closed;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const Millis at = schedule(k);
      if (kinds[k] == 0) {
        auto& p = persons_[rng_.below(persons_.size())];
        const double age = std::get<double>(p.attrs.at("age"));
        Attributes change;
        if (age >= 18 && age < 60) {
          const auto& cur = std::get<std::string>(p.attrs.at("employment"));
          change["employment"] = cur == "employed" ? std::string("unemployed") : std::string("employed");
        } else if (age >= 22) {
          change["marriage"] = std::string(std::get<std::string>(p.attrs.at("marriage")) == "married" ? "widowed" : "married");
        } else {
          change["age"] = age + 1.0;
        }
        for (const auto& [key, value] : change) p.attrs[key] = value;
        emit(at, p.id, EventType::Update, std::move(change));
      } else if (kinds[k] == 1) {
        auto& p = persons_[rng_.below(persons_.size())];
        auto to = rng_.below(houses_.size() - 1);
        if (to >= p.house) ++to;
        emit(at, p.id, EventType::Unrelate, RelationPayload{Predicate::LivesIn, houses_[p.house].id});
        emit(at + 1, p.id, EventType::Relate, RelationPayload{Predicate::LivesIn, houses_[to].id});
        p.house = to;
      } else {
        auto idx = rng_.below(events_.size());
        while (closed.contains(idx)) idx = (idx + 1) % events_.size();
        closed.insert(idx);
        emit(at, events_[idx], EventType::Update, Attributes{{"status", std::string("resolved")}});
        emit(at + 1, events_[idx], EventType::Delete, Attributes{});
      }
    }
  }

  void traffic_samples() {
    for (Millis t = kGenerationEpoch; t <= kGenerationEpoch + kTrafficSpan; t += kSampleStep) {
      const double phase = static_cast<double>(t - kGenerationEpoch) / static_cast<double>(kTrafficSpan);
      for (const auto& r : roads_) {
        const double rush = 1.0 - 0.5 * std::sin(phase * std::numbers::pi);
        const double v = std::clamp(r.base_kmh * rush + rng_.uniform(-8.0, 8.0), 2.0, 90.0);
        city_.samples.push_back({r.id, t, std::round(v * 10.0) / 10.0});
      }
    }
  }

  const GenSpec& spec_;
  const GenCounts& c_;
  SplitMix64 rng_;
  geo::GeoIndex admin_;
  GeneratedCity city_;
  Millis last_t_ = kGenerationEpoch;
  std::vector<Relation> relations_;
  std::vector<Building> buildings_;
  std::vector<HousePlan> houses_;
  std::vector<RoomPlan> rooms_;
  std::vector<PersonPlan> persons_;
  std::vector<std::vector<std::size_t>> residents_;
  std::vector<RoadPlan> roads_;
  std::vector<EntityId> events_;
};

}  // namespace

void GenSpec::validate() const {
  const std::pair<const char*, std::int64_t> checks[] = {
      {"districts", counts.districts},
      {"streets_per_district", counts.streets_per_district},
      {"communities_per_street", counts.communities_per_street},
      {"grids_per_community", counts.grids_per_community},
      {"buildings", counts.buildings},
      {"households_per_building", counts.households_per_building},
      {"rooms_per_house", counts.rooms_per_house},
      {"companies", counts.companies},
      {"road_segments", counts.road_segments},
      {"pipeline_segments", counts.pipeline_segments},
      {"subway_lines", counts.subway_lines},
      {"power_nodes", counts.power_nodes},
      {"urban_events", counts.urban_events},
  };
  for (const auto& [name, v] : checks) {
    if (v < 0) throw Error(ErrorCode::InvalidSpec, std::string(name) + " must be >= 0");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (checks[i].second < 1) throw Error(ErrorCode::InvalidSpec, std::string(checks[i].first) + " must be >= 1");
  }
  if (!(counts.persons_per_household >= 0.0) || !std::isfinite(counts.persons_per_household)) {
    throw Error(ErrorCode::InvalidSpec, "persons_per_household must be >= 0");
  }
  if (!(bbox.width() > 0.0) || !(bbox.height() > 0.0) || bbox.min_lat < -85.0 || bbox.max_lat > 85.0) {
    throw Error(ErrorCode::InvalidSpec, "bbox must have positive extent within +-85 degrees latitude");
  }
  const std::int64_t regions = counts.districts * counts.streets_per_district * counts.communities_per_street *
                               counts.grids_per_community;
  if (regions > 100'000) throw Error(ErrorCode::InvalidSpec, "too many admin regions");
}

void GenSpec::apply_counts(std::string_view text) {
  if (trim(text).empty()) return;
  for (auto item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::InvalidSpec, "expected key=value, got '" + trim(item) + "'");
    const auto key = trim(item.substr(0, eq));
    const auto value = item.substr(eq + 1);
    std::int64_t GenCounts::*field = nullptr;
    if (key == "districts") field = &GenCounts::districts;
    else if (key == "streets_per_district" || key == "streets") field = &GenCounts::streets_per_district;
    else if (key == "communities_per_street" || key == "communities") field = &GenCounts::communities_per_street;
    else if (key == "grids_per_community" || key == "grids") field = &GenCounts::grids_per_community;
    else if (key == "buildings") field = &GenCounts::buildings;
    else if (key == "households_per_building") field = &GenCounts::households_per_building;
    else if (key == "rooms_per_house") field = &GenCounts::rooms_per_house;
    else if (key == "companies") field = &GenCounts::companies;
    else if (key == "road_segments") field = &GenCounts::road_segments;
    else if (key == "pipeline_segments") field = &GenCounts::pipeline_segments;
    else if (key == "subway_lines") field = &GenCounts::subway_lines;
    else if (key == "power_nodes") field = &GenCounts::power_nodes;
    else if (key == "urban_events") field = &GenCounts::urban_events;

    if (field != nullptr) {
      counts.*field = parse_count(value, key);
    } else if (key == "persons_per_household") {
      counts.persons_per_household = parse_double(value, key);
    } else {
      throw Error(ErrorCode::InvalidSpec, "unknown count '" + key + "'");
    }
  }
}

geo::BBox parse_bbox_text(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(ErrorCode::InvalidSpec, "bbox needs minlon,minlat,maxlon,maxlat");
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) v[i] = parse_double(parts[i], "bbox");
  try {
    return geo::BBox(v[0], v[1], v[2], v[3]);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidSpec, e.what());
  }
}

GeneratedCity generate_city(const GenSpec& spec) {
  spec.validate();
  return CityBuilder(spec).build();
}

void write_city(const GeneratedCity& city, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::StorageFailure, "cannot create " + dir.string() + ": " + ec.message());
  auto write = [&](std::string_view name, auto&& fill) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::StorageFailure, "cannot open " + path.string());
    fill(out);
    out.flush();
    if (!out) throw Error(ErrorCode::StorageFailure, "write failed for " + path.string());
  };
  write(kEventLogFile, [&](std::ofstream& out) {
    for (const auto& e : city.events) out << encode_event_line(e) << '\n';
  });
  write(kGeometryFile, [&](std::ofstream& out) { out << write_feature_collection(city.features); });
  write(kTrafficFile, [&](std::ofstream& out) {
    for (const auto& s : city.samples) out << encode_sample_line(s) << '\n';
  });
}

}  // namespace holocity::data
