#include "holocity/api/service.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "holocity/analytics/heat.hpp"
#include "holocity/analytics/region.hpp"
#include "holocity/data/generator.hpp"
#include "holocity/error.hpp"
#include "holocity/scene/catalog.hpp"
#include "holocity/scene/tiles.hpp"
#include "holocity/sdm/event_codec.hpp"
#include "json_scalar.hpp"

namespace holocity::api {

using nlohmann::json;

int http_status_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
      return 400;
    case ErrorCode::UnknownEntity:
    case ErrorCode::UnknownLayer:
    case ErrorCode::TileOutOfRange:
    case ErrorCode::UnknownSegment:
      return 404;
    case ErrorCode::OutOfOrderEvent:
    case ErrorCode::DuplicateCreate:
    case ErrorCode::DeletedEntity:
    case ErrorCode::DuplicateRelation:
    case ErrorCode::NoSuchRelation:
      return 409;
    case ErrorCode::StorageFailure:
    case ErrorCode::CorruptLog:
      return 500;
    case ErrorCode::SelfRelation:
    case ErrorCode::WrongKind:
    case ErrorCode::InvalidRange:
    case ErrorCode::InvalidGeometry:
    case ErrorCode::Unassigned:
    case ErrorCode::OrphanLayer:
    case ErrorCode::LatitudeOutOfRange:
    case ErrorCode::UnknownRegion:
    case ErrorCode::OutOfRange:
    case ErrorCode::TooFewValues:
    case ErrorCode::PointOutsideBox:
    case ErrorCode::NegativeSpeed:
    case ErrorCode::InvalidSpec:
      return 422;
  }
  return 500;
}

analytics::CategoryMap default_category_map(const std::string& attribute) {
  if (attribute == "age") return analytics::CategoryMap::ranges({18, 35, 60}, {"0-17", "18-34", "35-59", "60+"});
  return analytics::CategoryMap::identity();
}

namespace {

ApiResponse respond(int status, const json& body) { return {status, body.dump(), "application/json"}; }

ApiResponse error_response(int status, std::string_view code, const std::string& message) {
  return respond(status, json{{"error", code}, {"message", message}});
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const auto next = path.find('/', pos);
    const auto part = path.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (!part.empty()) parts.emplace_back(part);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(',', pos);
    const auto part = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (!part.empty()) out.emplace_back(part);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

// Query-string accessors. Malformed values are client errors (400).
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& q) : q_(q) {}

  const std::string* raw(const std::string& key) const {
    auto it = q_.find(key);
    return it == q_.end() ? nullptr : &it->second;
  }

  std::string str(const std::string& key, std::string fallback) const {
    const auto* v = raw(key);
    return v == nullptr ? fallback : *v;
  }

  std::string required(const std::string& key) const {
    const auto* v = raw(key);
    if (v == nullptr || v->empty()) throw Error(ErrorCode::InvalidArgument, "missing parameter '" + key + "'");
    return *v;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    const auto* v = raw(key);
    return v == nullptr ? fallback : to_int(*v, key);
  }

  double number(const std::string& key, double fallback) const {
    const auto* v = raw(key);
    return v == nullptr ? fallback : to_double(*v, key);
  }

  static std::int64_t to_int(std::string_view s, std::string_view key) {
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      throw Error(ErrorCode::InvalidArgument, "parameter '" + std::string(key) + "' must be an integer");
    }
    return v;
  }

  static double to_double(std::string_view s, std::string_view key) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "parameter '" + std::string(key) + "' must be a number");
    }
    return v;
  }

 private:
  const std::map<std::string, std::string>& q_;
};

double r7(double v) { return std::round(v * 1e7) / 1e7; }

json point_json(const geo::GeoPoint& p) { return json::array({r7(p.lon), r7(p.lat), p.alt}); }

json geometry_json(const geo::Geometry& g) {
  if (const auto* p = std::get_if<geo::GeoPoint>(&g)) return json{{"type", "Point"}, {"coordinates", point_json(*p)}};
  auto line = [](const std::vector<geo::GeoPoint>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(point_json(p));
    return a;
  };
  if (const auto* l = std::get_if<geo::Polyline>(&g)) return json{{"type", "LineString"}, {"coordinates", line(l->points())}};
  auto ring = line(std::get<geo::Footprint>(g).ring());
  ring.push_back(ring.front());
  return json{{"type", "Polygon"}, {"coordinates", json::array({ring})}};
}

json bbox_json(const geo::BBox& b) { return json::array({r7(b.min_lon), r7(b.min_lat), r7(b.max_lon), r7(b.max_lat)}); }

json interval_json(const Interval& v) {
  return json{{"from", v.from}, {"to", v.to ? json(*v.to) : json(nullptr)}};
}

json state_json(const StateRecord& s) {
  return json{{"entity_id", s.entity_id.str()},
              {"kind", kind_name(s.entity_id.kind())},
              {"version", s.version},
              {"valid", interval_json(s.valid)},
              {"attributes", detail::attributes_to_json(s.attributes)}};
}

json relation_json(const SemanticRelation& r) {
  return json{{"subject", r.subject.str()},
              {"predicate", predicate_name(r.predicate)},
              {"object", r.object.str()},
              {"valid", interval_json(r.valid)}};
}

json scene_object_json(const scene::SceneObject& o) {
  return json{{"entity_id", o.entity_id.str()},
              {"kind", kind_name(o.entity_id.kind())},
              {"layer", o.layer_id},
              {"lod_min_zoom", o.lod_min_zoom},
              {"base_alt", o.base_alt},
              {"height_m", o.height_m},
              {"band", o.band() == geo::Band::Above ? "above" : "below"},
              {"geometry", geometry_json(o.geometry)}};
}

json admin_path_json(const AdminPath& p) {
  return json{{"district", p.district.str()},
              {"street", p.street.str()},
              {"community", p.community.str()},
              {"grid", p.grid_cell.str()}};
}

json grid_shape_json(const analytics::GridShape& s) {
  return json{{"origin", json::array({r7(s.origin.lon), r7(s.origin.lat)})},
              {"cell", s.cell_size},
              {"rows", s.rows},
              {"cols", s.cols}};
}

EntityKind kind_param(const Params& p, EntityKind fallback) {
  const auto* v = p.raw("kind");
  if (v == nullptr) return fallback;
  const auto k = parse_kind(*v);
  if (!k) throw Error(ErrorCode::InvalidArgument, "unknown kind '" + *v + "'");
  return *k;
}

geo::BBox bbox_param(const Params& p) {
  const auto parts = split_list(p.required("bbox"));
  if (parts.size() != 4) throw Error(ErrorCode::InvalidArgument, "bbox needs minlon,minlat,maxlon,maxlat");
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) v[i] = Params::to_double(parts[i], "bbox");
  try {
    return geo::BBox(v[0], v[1], v[2], v[3]);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidArgument, e.what());
  }
}

scene::LayerTree layer_tree(const scene::SceneCatalog& catalog, const Params& p) {
  auto tree = scene::build_layer_tree(catalog);
  if (const auto* hidden = p.raw("hidden")) {
    for (const auto& id : split_list(*hidden)) tree.set_visible(id, false);
  }
  return tree;
}

std::vector<EntityId> entities_param(const Store& store, const geo::GeoIndex& index, const Params& p, EntityKind kind,
                                     Millis t) {
  if (const auto* region = p.raw("region"); region != nullptr && !region->empty()) {
    return analytics::select_entities(store, index, analytics::parse_region(*region), kind, t);
  }
  std::vector<EntityId> out;
  for (auto& id : store.entity_ids(kind)) {
    if (store.is_live(id, t)) out.push_back(std::move(id));
  }
  return out;
}

json composition_json(const analytics::CompositionBreakdown& c) {
  json cats = json::array();
  for (const auto& cat : c.categories) cats.push_back(json{{"label", cat.label}, {"count", cat.count}, {"fraction", cat.fraction}});
  return json{{"attribute", c.attribute}, {"total", c.total}, {"categories", std::move(cats)}};
}

std::vector<traffic::CongestionSample> samples_from_body(const std::string& body) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::ParseError, "body is not valid JSON");
  const json* arr = &doc;
  if (doc.is_object() && doc.contains("samples")) arr = &doc["samples"];
  if (!arr->is_array()) throw Error(ErrorCode::ParseError, "expected an array of samples");
  std::vector<traffic::CongestionSample> out;
  for (const auto& s : *arr) out.push_back(data::decode_sample_line(s.dump()));
  return out;
}

}  // namespace

std::unique_ptr<Service> Service::open(const ServiceConfig& config) {
  const auto dir = config.log_path.parent_path();
  const auto geometry = config.geometry_path.value_or(dir / data::kGeometryFile);
  const auto traffic_path = config.traffic_path.value_or(dir / data::kTrafficFile);

  RecoveryReport report;
  Store store = recover(config.log_path, &report, true);

  data::CityWorld world;
  if (std::filesystem::exists(geometry)) {
    for (const auto& f : data::import_dataset(geometry).features) data::add_feature(world, f);
  }
  std::vector<traffic::CongestionSample> samples;
  scan_log(
      traffic_path, [&](std::string_view line) { samples.push_back(data::decode_sample_line(line)); }, true);
  for (const auto& s : samples) {
    // Samples for segments the geometry does not know are kept on disk only.
    if (world.traffic.has_segment(s.segment_id)) world.traffic.ingest(s);
  }

  auto service = std::make_unique<Service>(std::move(store), std::move(world),
                                           std::make_unique<AppendLog>(config.log_path, config.flush),
                                           std::make_unique<AppendLog>(traffic_path, config.flush));
  service->recovery_ = report;
  return service;
}

Service::Service(Store store, data::CityWorld world, std::unique_ptr<AppendLog> event_log,
                 std::unique_ptr<AppendLog> traffic_log)
    : store_(std::move(store)),
      world_(std::move(world)),
      event_log_(std::move(event_log)),
      traffic_log_(std::move(traffic_log)) {}

void Service::set_fault_injector(FaultInjector injector) {
  std::unique_lock lock(mu_);
  if (event_log_) event_log_->set_fault_injector(injector);
  if (traffic_log_) traffic_log_->set_fault_injector(injector);
}

ApiResponse Service::route_request(const ApiRequest& request) {
  try {
    if (request.method == "GET") return get(request);
    if (request.method == "POST") return post(request);
    return error_response(405, "MethodNotAllowed", request.method + " is not supported");
  } catch (const Error& e) {
    return error_response(http_status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_response(400, "ParseError", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

ApiResponse Service::post(const ApiRequest& request) {
  const auto parts = split_path(request.path);
  if (parts == std::vector<std::string>{"events"}) {
    const EventRecord event = decode_event_line(request.body);
    std::unique_lock lock(mu_);
    store_.validate(event);
    if (event_log_) event_log_->append(encode_event_line(event));
    const auto state = store_.apply_event(event);
    return respond(200, json{{"event_id", event.event_id}, {"state", state_json(state)}});
  }
  if (parts == std::vector<std::string>{"traffic", "samples"}) {
    const auto samples = samples_from_body(request.body);
    std::unique_lock lock(mu_);
    for (const auto& s : samples) {
      if (!world_.traffic.has_segment(s.segment_id)) throw Error(ErrorCode::UnknownSegment, s.segment_id.str());
      if (!(s.speed_kmh >= 0.0) || !std::isfinite(s.speed_kmh)) {
        throw Error(ErrorCode::NegativeSpeed, s.segment_id.str() + " speed must be >= 0");
      }
    }
    std::vector<std::string> lines;
    lines.reserve(samples.size());
    for (const auto& s : samples) lines.push_back(data::encode_sample_line(s));
    if (traffic_log_ && !lines.empty()) traffic_log_->append(lines);
    world_.traffic.ingest_batch(samples);
    return respond(200, json{{"accepted", samples.size()}});
  }
  return error_response(404, "NotFound", "no route for POST " + request.path);
}

ApiResponse Service::get(const ApiRequest& request) {
  const auto parts = split_path(request.path);
  const Params p(request.query);
  std::shared_lock lock(mu_);
  const Millis latest = store_.latest_timestamp();
  const Millis at = p.integer("at", latest);
  const auto n = parts.size();
  const auto is = [&](std::initializer_list<std::string_view> want) {
    if (want.size() != n) return false;
    std::size_t i = 0;
    for (auto w : want) {
      if (w != "*" && w != parts[i]) return false;
      ++i;
    }
    return true;
  };

  if (is({"healthz"})) {
    return respond(200, json{{"status", "ok"},
                             {"events", store_.last_event_id()},
                             {"entities", store_.entity_count()},
                             {"latest", latest},
                             {"scene_objects", world_.catalog.size()}});
  }

  if (is({"layers"})) {
    const auto tree = layer_tree(world_.catalog, p);
    json layers = json::array();
    for (const auto& node : tree.nodes()) {
      layers.push_back(json{{"id", node.layer_id},
                            {"name", node.name},
                            {"parent", node.parent ? json(*node.parent) : json(nullptr)},
                            {"children", node.children},
                            {"visible", node.visible},
                            {"effective_visible", tree.effective_visibility(node.layer_id)}});
    }
    return respond(200, json{{"layers", std::move(layers)}});
  }

  if (is({"tiles", "*", "*", "*"})) {
    const auto key = scene::TileKey::make(static_cast<int>(Params::to_int(parts[1], "z")), Params::to_int(parts[2], "x"),
                                          Params::to_int(parts[3], "y"));
    const auto tree = layer_tree(world_.catalog, p);
    const auto live = [&](const scene::SceneObject& o) { return store_.is_live(o.entity_id, at); };
    const auto m = scene::objects_for_tile(world_.catalog, key, tree, at, live);
    json objects = json::array();
    for (const auto& o : m.objects) objects.push_back(scene_object_json(o));
    return respond(200, json{{"key", json{{"z", key.z}, {"x", key.x}, {"y", key.y}}},
                             {"bbox", bbox_json(key.bbox())},
                             {"generated_at", m.generated_at},
                             {"objects", std::move(objects)}});
  }

  if (is({"entities", "*"}) || is({"entities", "*", "holographic"})) {
    const auto id = EntityId::parse(parts[1]);
    if (!store_.contains(id)) throw Error(ErrorCode::UnknownEntity, id.str());
    if (n == 3) {
      const auto rec = store_.household_record(id, at);
      json residents = json::array();
      for (const auto& r : rec.residents) residents.push_back(state_json(r));
      json events = json::array();
      for (const auto& e : rec.open_events) events.push_back(state_json(e));
      const auto* obj = world_.catalog.find(id);
      return respond(200, json{{"at", rec.at},
                               {"house", state_json(rec.house)},
                               {"building", rec.building ? state_json(*rec.building) : json(nullptr)},
                               {"owner", rec.owner ? state_json(*rec.owner) : json(nullptr)},
                               {"residents", std::move(residents)},
                               {"admin_path", rec.admin_path ? admin_path_json(*rec.admin_path) : json(nullptr)},
                               {"open_events", std::move(events)},
                               {"geometry", obj != nullptr ? geometry_json(obj->geometry) : json(nullptr)}});
    }
    const auto state = store_.state_at(id, at);
    if (!state) throw Error(ErrorCode::UnknownEntity, id.str() + " is not live at " + std::to_string(at));
    json body = state_json(*state);
    json rel = json::array();
    for (const auto& r : store_.relations_of(id, std::nullopt, at, Direction::Out)) rel.push_back(relation_json(r));
    json inc = json::array();
    for (const auto& r : store_.relations_of(id, std::nullopt, at, Direction::In)) inc.push_back(relation_json(r));
    body["relations"] = std::move(rel);
    body["incoming"] = std::move(inc);
    const auto* obj = world_.catalog.find(id);
    body["scene"] = obj != nullptr ? scene_object_json(*obj) : json(nullptr);
    return respond(200, body);
  }

  if (is({"stats", "composition"})) {
    const auto kind = kind_param(p, EntityKind::Person);
    const auto attr = p.required("attr");
    const auto ids = entities_param(store_, world_.catalog.index(), p, kind, at);
    const auto c = analytics::composition(store_, ids, attr, default_category_map(attr), at);
    auto body = composition_json(c);
    body["at"] = at;
    body["kind"] = kind_name(kind);
    return respond(200, body);
  }

  if (is({"stats", "histogram"})) {
    const auto kind = kind_param(p, EntityKind::Person);
    const auto attr = p.required("attr");
    const auto spec = analytics::HistogramSpec::make(p.number("min", 0.0), p.number("max", 100.0),
                                                     static_cast<std::size_t>(std::max<std::int64_t>(0, p.integer("bins", 10))));
    const auto ids = entities_param(store_, world_.catalog.index(), p, kind, at);
    const auto values = analytics::numeric_values(store_, ids, attr, at);
    const auto counts = analytics::histogram(values, spec);
    json normal = nullptr;
    if (values.size() >= 2) {
      const auto fit = analytics::fit_normal(values);
      normal = json{{"mean", fit.mean}, {"stddev", fit.stddev}, {"degenerate", fit.degenerate}};
    }
    return respond(200, json{{"at", at},
                             {"attribute", attr},
                             {"kind", kind_name(kind)},
                             {"min", spec.min},
                             {"max", spec.max},
                             {"bins", spec.bin_count},
                             {"bin_width", spec.bin_width()},
                             {"n", values.size()},
                             {"counts", counts},
                             {"normal", normal}});
  }

  if (is({"heatmap"})) {
    const auto kind = kind_param(p, EntityKind::Person);
    const auto box = bbox_param(p);
    const double cell = p.number("cell", 0.005);
    const double sigma = p.number("sigma", 0.0);
    const auto ids = entities_param(store_, world_.catalog.index(), p, kind, at);
    std::vector<geo::GeoPoint> points;
    std::size_t outside = 0;
    for (const auto& id : ids) {
      auto loc = analytics::locate_entity(store_, world_.catalog.index(), id, at);
      if (loc && box.contains(*loc)) {
        points.push_back(*loc);
      } else {
        ++outside;
      }
    }
    const auto grid = analytics::heat_grid(points, box, cell, sigma);
    auto body = grid_shape_json(grid.shape);
    body["at"] = at;
    body["kind"] = kind_name(kind);
    body["sigma"] = sigma;
    body["values"] = grid.values;
    body["mass"] = grid.mass;
    body["points"] = points.size();
    body["skipped"] = outside;
    return respond(200, body);
  }

  if (is({"dots"})) {
    const auto kind = kind_param(p, EntityKind::Person);
    const auto attr = p.required("attr");
    const auto ids = entities_param(store_, world_.catalog.index(), p, kind, at);
    const auto map = analytics::dotted_map(store_, world_.catalog.index(), ids, attr, default_category_map(attr), at);
    json dots = json::array();
    for (const auto& d : map.dots) {
      dots.push_back(json{{"id", d.id.str()}, {"lon", r7(d.location.lon)}, {"lat", r7(d.location.lat)}, {"category", d.category}});
    }
    return respond(200, json{{"at", at}, {"attribute", attr}, {"dots", std::move(dots)}, {"skipped", map.skipped}});
  }

  const Millis traffic_latest = world_.traffic.latest_sample_time().value_or(latest);

  if (is({"traffic", "current"})) {
    const Millis t = p.integer("at", traffic_latest);
    const auto frame = world_.traffic.conditions_at(t);
    json segs = json::array();
    for (const auto& [id, level] : frame.levels) {
      const auto speed = world_.traffic.fresh_speed(id, t);
      segs.push_back(json{{"id", id.str()}, {"level", traffic::level_name(level)}, {"speed_kmh", speed ? json(*speed) : json(nullptr)}});
    }
    return respond(200, json{{"t", t}, {"segments", std::move(segs)}});
  }

  if (is({"traffic", "areal"})) {
    const Millis t = p.integer("at", traffic_latest);
    const auto frame = world_.traffic.areal_conditions(t, bbox_param(p), p.number("cell", 0.01));
    auto body = grid_shape_json(frame.shape);
    body["t"] = t;
    json levels = json::array();
    for (auto l : frame.levels) levels.push_back(traffic::level_name(l));
    json speeds = json::array();
    for (const auto& s : frame.mean_speed_kmh) speeds.push_back(s ? json(*s) : json(nullptr));
    body["levels"] = std::move(levels);
    body["mean_speed_kmh"] = std::move(speeds);
    return respond(200, body);
  }

  if (is({"traffic", "history"})) {
    const Millis from = p.integer("from", traffic_latest);
    const Millis to = p.integer("to", from);
    const Millis step = p.integer("step", 5 * 60 * 1000);
    if (step > 0 && (to - from) / step > 10'000) throw Error(ErrorCode::InvalidRange, "more than 10000 frames requested");
    const auto frames = world_.traffic.replay_frames(from, to, step);
    json out = json::array();
    for (const auto& f : frames) {
      json levels = json::object();
      for (const auto& [id, level] : f.levels) levels[id.str()] = traffic::level_name(level);
      out.push_back(json{{"t", f.t}, {"levels", std::move(levels)}});
    }
    return respond(200, json{{"from", from}, {"to", to}, {"step", step}, {"frames", std::move(out)}});
  }

  if (is({"subway", "*", "position"})) {
    const auto id = EntityId::parse(parts[1]);
    const auto it = world_.routes.find(id);
    if (it == world_.routes.end()) throw Error(ErrorCode::UnknownEntity, "no schedule for " + id.str());
    const auto pos = traffic::route_position(it->second, at);
    return respond(200, json{{"line", id.str()},
                             {"at", at},
                             {"lon", r7(pos.point.lon)},
                             {"lat", r7(pos.point.lat)},
                             {"alt", pos.point.alt},
                             {"status", traffic::route_status_name(pos.status)},
                             {"arc_m", pos.arc_m},
                             {"total_m", it->second.total_length_m()}});
  }

  if (is({"power", "*", "connected"})) {
    const auto id = EntityId::parse(parts[1]);
    json ids = json::array();
    for (const auto& c : scene::trace_connected(store_, id, at)) ids.push_back(c.str());
    return respond(200, json{{"node", id.str()}, {"at", at}, {"connected", std::move(ids)}});
  }

  if (is({"pick"})) {
    const double lon = Params::to_double(p.required("lon"), "lon");
    const double lat = Params::to_double(p.required("lat"), "lat");
    const int z = static_cast<int>(p.integer("z", scene::kMaxZoom));
    const auto mode_text = p.str("mode", "above");
    if (mode_text != "above" && mode_text != "below") throw Error(ErrorCode::InvalidArgument, "mode is above or below");
    geo::GeoPoint point;
    try {
      point = geo::GeoPoint(lon, lat);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidArgument, e.what());
    }
    const auto tree = layer_tree(world_.catalog, p);
    const auto live = [&](const scene::SceneObject& o) { return store_.is_live(o.entity_id, at); };
    const auto hit = scene::pick_object(world_.catalog, point, z,
                                        mode_text == "above" ? scene::PickMode::Above : scene::PickMode::Below, tree, live);
    return respond(200, json{{"at", at}, {"hit", hit ? scene_object_json(*hit) : json(nullptr)}});
  }

  return error_response(404, "NotFound", "no route for GET " + request.path);
}

}  // namespace holocity::api
