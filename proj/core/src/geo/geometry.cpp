#include "holocity/geo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holocity/error.hpp"

namespace holocity::geo {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double orient(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c) noexcept {
  return (b.lon - a.lon) * (c.lat - a.lat) - (b.lat - a.lat) * (c.lon - a.lon);
}

int sign(double v) noexcept { return (v > 0) - (v < 0); }

bool within_segment_box(const GeoPoint& a, const GeoPoint& b, const GeoPoint& p) noexcept {
  return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
         p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

bool self_intersects(const std::vector<GeoPoint>& ring) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    if (a.lon == b.lon && a.lat == b.lat) return true;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& c = ring[j];
      const auto& d = ring[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (segments_intersect(a, b, c, d)) return true;
        continue;
      }
      // Adjacent edges share one vertex; they may only touch there. Folding
      // back onto each other is an overlap.
      const GeoPoint& shared = (j == i + 1) ? b : a;
      const GeoPoint& other_ab = (j == i + 1) ? a : b;
      const GeoPoint& other_cd = (j == i + 1) ? d : c;
      if (orient(shared, other_ab, other_cd) == 0.0) {
        const double dot = (other_ab.lon - shared.lon) * (other_cd.lon - shared.lon) +
                           (other_ab.lat - shared.lat) * (other_cd.lat - shared.lat);
        if (dot > 0) return true;
      }
    }
  }
  return false;
}

double signed_area_deg2(const std::vector<GeoPoint>& ring) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    sum += a.lon * b.lat - b.lon * a.lat;
  }
  return sum / 2.0;
}

}  // namespace

GeoPoint::GeoPoint(double lon_deg, double lat_deg, double alt_m) : lon(lon_deg), lat(lat_deg), alt(alt_m) {
  if (!(lon >= -180.0 && lon <= 180.0) || !(lat >= -90.0 && lat <= 90.0) || !std::isfinite(alt)) {
    throw Error(ErrorCode::InvalidGeometry,
                "point out of range: (" + std::to_string(lon) + ", " + std::to_string(lat) + ")");
  }
}

BBox::BBox(double min_lon_deg, double min_lat_deg, double max_lon_deg, double max_lat_deg)
    : min_lon(min_lon_deg), min_lat(min_lat_deg), max_lon(max_lon_deg), max_lat(max_lat_deg) {
  // Rejects NaN too.
  if (!(min_lon <= max_lon) || !(min_lat <= max_lat)) {
    throw Error(ErrorCode::InvalidGeometry, "bbox needs min <= max (antimeridian crossing unsupported)");
  }
  if (min_lon < -180.0 || max_lon > 180.0 || min_lat < -90.0 || max_lat > 90.0) {
    throw Error(ErrorCode::InvalidGeometry, "bbox outside lon/lat range");
  }
}

BBox BBox::of(std::span<const GeoPoint> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidGeometry, "bbox of no points");
  BBox b;
  b.min_lon = b.max_lon = points.front().lon;
  b.min_lat = b.max_lat = points.front().lat;
  for (const auto& p : points) {
    b.min_lon = std::min(b.min_lon, p.lon);
    b.max_lon = std::max(b.max_lon, p.lon);
    b.min_lat = std::min(b.min_lat, p.lat);
    b.max_lat = std::max(b.max_lat, p.lat);
  }
  return b;
}

Footprint::Footprint(std::vector<GeoPoint> ring) : ring_(std::move(ring)) {
  if (ring_.size() >= 2 && ring_.front() == ring_.back()) ring_.pop_back();
  if (ring_.size() < 3) throw Error(ErrorCode::InvalidGeometry, "footprint needs at least 3 vertices");
  if (signed_area_deg2(ring_) == 0.0) throw Error(ErrorCode::InvalidGeometry, "footprint has zero area");
  if (self_intersects(ring_)) throw Error(ErrorCode::InvalidGeometry, "footprint ring self-intersects");
  bbox_ = BBox::of(ring_);
}

double Footprint::area_m2() const noexcept {
  double lat0 = 0.0;
  for (const auto& p : ring_) lat0 += p.lat;
  lat0 /= static_cast<double>(ring_.size());
  const double k = kDegToRad * kEarthRadiusM;
  return std::fabs(signed_area_deg2(ring_)) * k * k * std::cos(lat0 * kDegToRad);
}

GeoPoint Footprint::centroid() const noexcept {
  // Shift to the first vertex to keep the products small.
  const auto& o = ring_.front();
  double cx = 0, cy = 0, a2 = 0, alt = 0;
  for (std::size_t i = 0, n = ring_.size(); i < n; ++i) {
    const double x0 = ring_[i].lon - o.lon, y0 = ring_[i].lat - o.lat;
    const double x1 = ring_[(i + 1) % n].lon - o.lon, y1 = ring_[(i + 1) % n].lat - o.lat;
    const double cross = x0 * y1 - x1 * y0;
    a2 += cross;
    cx += (x0 + x1) * cross;
    cy += (y0 + y1) * cross;
    alt += ring_[i].alt;
  }
  GeoPoint c;
  c.lon = o.lon + cx / (3.0 * a2);
  c.lat = o.lat + cy / (3.0 * a2);
  c.alt = alt / static_cast<double>(ring_.size());
  return c;
}

Polyline::Polyline(std::vector<GeoPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error(ErrorCode::InvalidGeometry, "polyline needs at least 2 points");
  bbox_ = BBox::of(points_);
}

double Polyline::length_m() const noexcept {
  double total = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) total += haversine_m(points_[i - 1], points_[i]);
  return total;
}

BBox bbox_of(const Geometry& g) {
  if (const auto* p = std::get_if<GeoPoint>(&g)) return BBox::of(std::span(p, 1));
  if (const auto* l = std::get_if<Polyline>(&g)) return l->bbox();
  return std::get<Footprint>(g).bbox();
}

GeoPoint centroid_of(const Geometry& g) {
  if (const auto* p = std::get_if<GeoPoint>(&g)) return *p;
  if (const auto* f = std::get_if<Footprint>(&g)) return f->centroid();
  // Vertex mean keeps the centroid a pure function of the vertex list.
  const auto& pts = std::get<Polyline>(g).points();
  GeoPoint c;
  for (const auto& p : pts) {
    c.lon += p.lon;
    c.lat += p.lat;
    c.alt += p.alt;
  }
  const double n = static_cast<double>(pts.size());
  c.lon /= n;
  c.lat /= n;
  c.alt /= n;
  return c;
}

double area_m2_of(const Geometry& g) {
  if (const auto* f = std::get_if<Footprint>(&g)) return f->area_m2();
  return 0.0;
}

double min_alt_of(const Geometry& g) {
  if (const auto* p = std::get_if<GeoPoint>(&g)) return p->alt;
  const auto& pts = std::holds_alternative<Polyline>(g) ? std::get<Polyline>(g).points()
                                                         : std::get<Footprint>(g).ring();
  double m = pts.front().alt;
  for (const auto& p : pts) m = std::min(m, p.alt);
  return m;
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double phi1 = a.lat * kDegToRad, phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s = std::sin(dphi / 2), t = std::sin(dlambda / 2);
  const double h = std::min(1.0, s * s + std::cos(phi1) * std::cos(phi2) * t * t);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

bool on_segment(const GeoPoint& a, const GeoPoint& b, const GeoPoint& p) noexcept {
  return orient(a, b, p) == 0.0 && within_segment_box(a, b, p);
}

bool segments_intersect(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c, const GeoPoint& d) noexcept {
  const int o1 = sign(orient(a, b, c));
  const int o2 = sign(orient(a, b, d));
  const int o3 = sign(orient(c, d, a));
  const int o4 = sign(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && within_segment_box(a, b, c)) return true;
  if (o2 == 0 && within_segment_box(a, b, d)) return true;
  if (o3 == 0 && within_segment_box(c, d, a)) return true;
  if (o4 == 0 && within_segment_box(c, d, b)) return true;
  return false;
}

bool segment_intersects_box(const GeoPoint& a, const GeoPoint& b, const BBox& box) noexcept {
  if (box.contains(a) || box.contains(b)) return true;
  GeoPoint sw, se, ne, nw;
  sw.lon = nw.lon = box.min_lon;
  se.lon = ne.lon = box.max_lon;
  sw.lat = se.lat = box.min_lat;
  nw.lat = ne.lat = box.max_lat;
  return segments_intersect(a, b, sw, se) || segments_intersect(a, b, se, ne) ||
         segments_intersect(a, b, ne, nw) || segments_intersect(a, b, nw, sw);
}

bool ring_contains(std::span<const GeoPoint> ring, const GeoPoint& p) noexcept {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = ring[i];
    const auto& b = ring[j];
    if (on_segment(a, b, p)) return true;
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = (b.lon - a.lon) * (p.lat - a.lat) / (b.lat - a.lat) + a.lon;
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

bool intersects(const Geometry& g, const BBox& box) noexcept {
  if (const auto* p = std::get_if<GeoPoint>(&g)) return box.contains(*p);
  if (const auto* l = std::get_if<Polyline>(&g)) {
    const auto& pts = l->points();
    if (!l->bbox().intersects(box)) return false;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (segment_intersects_box(pts[i - 1], pts[i], box)) return true;
    return false;
  }
  const auto& f = std::get<Footprint>(g);
  if (!f.bbox().intersects(box)) return false;
  const auto& ring = f.ring();
  for (std::size_t i = 0, n = ring.size(); i < n; ++i)
    if (segment_intersects_box(ring[i], ring[(i + 1) % n], box)) return true;
  // No edge touches the box: either the box lies inside the polygon or the
  // two are disjoint. One corner decides.
  GeoPoint corner;
  corner.lon = box.min_lon;
  corner.lat = box.min_lat;
  return ring_contains(ring, corner);
}

bool contains(const Geometry& g, const GeoPoint& p) noexcept {
  if (const auto* q = std::get_if<GeoPoint>(&g)) return q->lon == p.lon && q->lat == p.lat;
  if (const auto* l = std::get_if<Polyline>(&g)) {
    const auto& pts = l->points();
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (on_segment(pts[i - 1], pts[i], p)) return true;
    return false;
  }
  const auto& f = std::get<Footprint>(g);
  return f.bbox().contains(p) && ring_contains(f.ring(), p);
}

}  // namespace holocity::geo
