#pragma once

#include <span>
#include <variant>
#include <vector>

namespace holocity::geo {

inline constexpr double kEarthRadiusM = 6'371'000.0;

// lon/lat in degrees, alt in meters; negative altitude is underground.
// The constructor enforces the coordinate ranges (Error InvalidGeometry).
struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;
  double alt = 0.0;

  GeoPoint() = default;
  GeoPoint(double lon_deg, double lat_deg, double alt_m = 0.0);

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

// Closed lon/lat rectangle. Boxes never cross the antimeridian: min <= max on
// both axes is enforced at construction.
struct BBox {
  double min_lon = 0.0;
  double min_lat = 0.0;
  double max_lon = 0.0;
  double max_lat = 0.0;

  BBox() = default;
  BBox(double min_lon_deg, double min_lat_deg, double max_lon_deg, double max_lat_deg);

  static BBox of(std::span<const GeoPoint> points);

  bool contains(const GeoPoint& p) const noexcept {
    return p.lon >= min_lon && p.lon <= max_lon && p.lat >= min_lat && p.lat <= max_lat;
  }
  bool contains(const BBox& b) const noexcept {
    return b.min_lon >= min_lon && b.max_lon <= max_lon && b.min_lat >= min_lat && b.max_lat <= max_lat;
  }
  bool intersects(const BBox& b) const noexcept {
    return min_lon <= b.max_lon && b.min_lon <= max_lon && min_lat <= b.max_lat && b.min_lat <= max_lat;
  }
  double width() const noexcept { return max_lon - min_lon; }
  double height() const noexcept { return max_lat - min_lat; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Simple polygon, implicitly closed (the first vertex is not repeated).
// Construction rejects fewer than 3 vertices, zero area and self-intersection.
class Footprint {
 public:
  explicit Footprint(std::vector<GeoPoint> ring);

  const std::vector<GeoPoint>& ring() const noexcept { return ring_; }
  BBox bbox() const noexcept { return bbox_; }
  // Planar area on a local equirectangular projection about the ring's
  // mean latitude.
  double area_m2() const noexcept;
  GeoPoint centroid() const noexcept;

  friend bool operator==(const Footprint& a, const Footprint& b) { return a.ring_ == b.ring_; }

 private:
  std::vector<GeoPoint> ring_;
  BBox bbox_;
};

class Polyline {
 public:
  explicit Polyline(std::vector<GeoPoint> points);

  const std::vector<GeoPoint>& points() const noexcept { return points_; }
  BBox bbox() const noexcept { return bbox_; }
  double length_m() const noexcept;

  friend bool operator==(const Polyline& a, const Polyline& b) { return a.points_ == b.points_; }

 private:
  std::vector<GeoPoint> points_;
  BBox bbox_;
};

using Geometry = std::variant<GeoPoint, Polyline, Footprint>;

BBox bbox_of(const Geometry& g);
GeoPoint centroid_of(const Geometry& g);
// Footprint area; zero for points and polylines.
double area_m2_of(const Geometry& g);
// Lowest altitude of any vertex.
double min_alt_of(const Geometry& g);

// Great-circle distance on a sphere of radius kEarthRadiusM (haversine).
double haversine_m(const GeoPoint& a, const GeoPoint& b) noexcept;

// Even-odd rule; a point on an edge or vertex counts as inside.
bool ring_contains(std::span<const GeoPoint> ring, const GeoPoint& p) noexcept;
bool on_segment(const GeoPoint& a, const GeoPoint& b, const GeoPoint& p) noexcept;
bool segments_intersect(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c, const GeoPoint& d) noexcept;
bool segment_intersects_box(const GeoPoint& a, const GeoPoint& b, const BBox& box) noexcept;

// Exact geometry/box intersection (closed sets).
bool intersects(const Geometry& g, const BBox& box) noexcept;
// Point-in-geometry: inside-or-boundary for footprints, on-the-line for
// polylines, equality of lon/lat for points.
bool contains(const Geometry& g, const GeoPoint& p) noexcept;

}  // namespace holocity::geo
