#include "holocity/data/formats.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "holocity/error.hpp"
#include "json_scalar.hpp"

namespace holocity::data {

using nlohmann::json;

double round7(double degrees) noexcept { return std::round(degrees * 1e7) / 1e7; }

namespace {

struct FeatureError {
  std::string reason;
};

geo::GeoPoint point_from(const json& c) {
  if (!c.is_array() || c.size() < 2 || c.size() > 3) throw FeatureError{"position must be [lon, lat] or [lon, lat, alt]"};
  for (const auto& v : c)
    if (!v.is_number()) throw FeatureError{"position components must be numbers"};
  return geo::GeoPoint(c[0].get<double>(), c[1].get<double>(), c.size() == 3 ? c[2].get<double>() : 0.0);
}

std::vector<geo::GeoPoint> points_from(const json& c) {
  if (!c.is_array()) throw FeatureError{"coordinates must be an array"};
  std::vector<geo::GeoPoint> pts;
  pts.reserve(c.size());
  for (const auto& p : c) pts.push_back(point_from(p));
  return pts;
}

geo::Geometry geometry_from(const json& g) {
  if (!g.is_object() || !g.contains("type") || !g.contains("coordinates")) throw FeatureError{"missing geometry"};
  const auto type = g["type"].is_string() ? g["type"].get<std::string>() : std::string();
  const auto& c = g["coordinates"];
  if (type == "Point") return point_from(c);
  if (type == "LineString") return geo::Polyline(points_from(c));
  if (type == "Polygon") {
    if (!c.is_array() || c.empty()) throw FeatureError{"polygon needs an outer ring"};
    if (c.size() > 1) throw FeatureError{"polygon holes are not supported"};
    return geo::Footprint(points_from(c[0]));
  }
  throw FeatureError{"unsupported geometry type '" + type + "'"};
}

double number_or(const json& props, const char* key, double fallback) {
  if (!props.contains(key)) return fallback;
  if (!props[key].is_number()) throw FeatureError{std::string(key) + " must be a number"};
  return props[key].get<double>();
}

FeatureRecord feature_from(const json& f) {
  if (!f.is_object() || !f.contains("properties") || !f["properties"].is_object()) {
    throw FeatureError{"feature without properties"};
  }
  const json& props = f["properties"];
  if (!props.contains("kind") || !props["kind"].is_string()) throw FeatureError{"missing kind"};
  const auto kind_text = props["kind"].get<std::string>();
  const auto kind = parse_kind(kind_text);
  if (!kind) throw FeatureError{"unknown kind '" + kind_text + "'"};
  if (!props.contains("id") || !props["id"].is_string() || props["id"].get<std::string>().empty()) {
    throw FeatureError{"missing id"};
  }

  FeatureRecord rec;
  const auto id_text = props["id"].get<std::string>();
  if (auto full = EntityId::try_parse(id_text); full && full->kind() == *kind) {
    rec.id = *full;
  } else {
    rec.id = EntityId(*kind, id_text);
  }
  if (!f.contains("geometry")) throw FeatureError{"missing geometry"};
  try {
    rec.geometry = geometry_from(f["geometry"]);
  } catch (const Error& e) {
    throw FeatureError{e.what()};
  }

  if (props.contains("layer")) {
    if (!props["layer"].is_string()) throw FeatureError{"layer must be a string"};
    rec.layer = props["layer"].get<std::string>();
  }
  rec.height_m = number_or(props, "height_m", 0.0);
  rec.base_alt = number_or(props, "base_alt", 0.0);
  if (props.contains("lod_min_zoom")) {
    if (!props["lod_min_zoom"].is_number_integer()) throw FeatureError{"lod_min_zoom must be an integer"};
    rec.lod_min_zoom = props["lod_min_zoom"].get<int>();
  }
  if (props.contains("attrs")) {
    try {
      rec.attrs = detail::attributes_from_json(props["attrs"]);
    } catch (const Error& e) {
      throw FeatureError{e.what()};
    }
  }
  for (auto it = props.begin(); it != props.end(); ++it) {
    constexpr std::string_view kPrefix = "attrs.";
    if (it.key().rfind(kPrefix, 0) != 0) continue;
    try {
      rec.attrs[it.key().substr(kPrefix.size())] = detail::scalar_from_json(it.value(), it.key());
    } catch (const Error& e) {
      throw FeatureError{e.what()};
    }
  }

  if (*kind == EntityKind::AdminRegion) {
    if (!std::holds_alternative<geo::Footprint>(rec.geometry)) throw FeatureError{"admin region needs a polygon"};
    if (!props.contains("level") || !props["level"].is_string()) throw FeatureError{"admin region needs a level"};
    rec.admin_level = parse_admin_level(props["level"].get<std::string>());
    if (!rec.admin_level) throw FeatureError{"unknown admin level"};
    if (*rec.admin_level != AdminLevel::District) {
      if (!props.contains("parent") || !props["parent"].is_string()) throw FeatureError{"admin region needs a parent"};
      rec.admin_parent = EntityId(EntityKind::AdminRegion, props["parent"].get<std::string>());
    }
  }
  if (props.contains("schedule")) {
    const json& s = props["schedule"];
    if (!s.is_object() || !s.contains("departure") || !s["departure"].is_number_integer() ||
        !s.contains("speeds_kmh") || !s["speeds_kmh"].is_array()) {
      throw FeatureError{"schedule needs departure and speeds_kmh"};
    }
    ScheduleSpec spec;
    spec.departure = s["departure"].get<Millis>();
    for (const auto& v : s["speeds_kmh"]) {
      if (!v.is_number()) throw FeatureError{"schedule speeds must be numbers"};
      spec.leg_speeds_kmh.push_back(v.get<double>());
    }
    rec.schedule = std::move(spec);
  }
  return rec;
}

json position_json(const geo::GeoPoint& p, bool with_alt) {
  json c = json::array({round7(p.lon), round7(p.lat)});
  if (with_alt) c.push_back(p.alt);
  return c;
}

json geometry_json(const geo::Geometry& g) {
  if (const auto* p = std::get_if<geo::GeoPoint>(&g)) {
    return json{{"type", "Point"}, {"coordinates", position_json(*p, p->alt != 0.0)}};
  }
  auto line = [](const std::vector<geo::GeoPoint>& pts, bool close) {
    bool alt = false;
    for (const auto& p : pts) alt = alt || p.alt != 0.0;
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(position_json(p, alt));
    if (close) arr.push_back(position_json(pts.front(), alt));
    return arr;
  };
  if (const auto* l = std::get_if<geo::Polyline>(&g)) {
    return json{{"type", "LineString"}, {"coordinates", line(l->points(), false)}};
  }
  return json{{"type", "Polygon"}, {"coordinates", json::array({line(std::get<geo::Footprint>(g).ring(), true)})}};
}

}  // namespace

FeatureParseResult parse_feature_collection(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::ParseError, "document is not valid JSON");
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
    throw Error(ErrorCode::ParseError, "document is not a FeatureCollection");
  }
  if (!doc.contains("features") || !doc["features"].is_array()) {
    throw Error(ErrorCode::ParseError, "FeatureCollection needs a features array");
  }
  FeatureParseResult result;
  std::set<EntityId> seen;
  const auto& features = doc["features"];
  for (std::size_t i = 0; i < features.size(); ++i) {
    const json& f = features[i];
    std::string id_text;
    if (f.is_object() && f.contains("properties") && f["properties"].is_object() &&
        f["properties"].contains("id") && f["properties"]["id"].is_string()) {
      id_text = f["properties"]["id"].get<std::string>();
    }
    try {
      auto rec = feature_from(f);
      rec.source_index = i;
      if (!seen.insert(rec.id).second) throw FeatureError{"duplicate id " + rec.id.str()};
      result.features.push_back(std::move(rec));
    } catch (const FeatureError& e) {
      result.rejected.push_back({i, id_text, e.reason});
    } catch (const Error& e) {
      result.rejected.push_back({i, id_text, e.what()});
    }
  }
  return result;
}

std::string write_feature_collection(const std::vector<FeatureRecord>& features) {
  std::string out = "{\"type\":\"FeatureCollection\",\"features\":[";
  bool first = true;
  for (const auto& f : features) {
    json props;
    props["kind"] = std::string(kind_name(f.id.kind()));
    props["id"] = std::string(f.id.local_id());
    if (f.layer) props["layer"] = *f.layer;
    if (f.height_m != 0.0) props["height_m"] = f.height_m;
    if (f.base_alt != 0.0) props["base_alt"] = f.base_alt;
    if (f.lod_min_zoom) props["lod_min_zoom"] = *f.lod_min_zoom;
    if (!f.attrs.empty()) props["attrs"] = detail::attributes_to_json(f.attrs);
    if (f.admin_level) props["level"] = std::string(admin_level_name(*f.admin_level));
    if (f.admin_parent) props["parent"] = std::string(f.admin_parent->local_id());
    if (f.schedule) props["schedule"] = json{{"departure", f.schedule->departure}, {"speeds_kmh", f.schedule->leg_speeds_kmh}};
    json feature{{"type", "Feature"}, {"geometry", geometry_json(f.geometry)}, {"properties", std::move(props)}};
    out += first ? "\n" : ",\n";
    out += feature.dump();
    first = false;
  }
  out += "\n]}\n";
  return out;
}

std::string encode_sample_line(const traffic::CongestionSample& s) {
  return json{{"segment_id", s.segment_id.str()}, {"speed_kmh", s.speed_kmh}, {"t", s.t}}.dump();
}

traffic::CongestionSample decode_sample_line(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("segment_id") || !j["segment_id"].is_string() ||
      !j.contains("t") || !j["t"].is_number_integer() || !j.contains("speed_kmh") || !j["speed_kmh"].is_number()) {
    throw Error(ErrorCode::ParseError, "sample needs segment_id, t (integer ms) and speed_kmh");
  }
  return {EntityId::parse(j["segment_id"].get<std::string>()), j["t"].get<Millis>(), j["speed_kmh"].get<double>()};
}

}  // namespace holocity::data
