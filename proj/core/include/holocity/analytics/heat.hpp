#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "holocity/analytics/stats.hpp"
#include "holocity/geo/index.hpp"

namespace holocity::analytics {

// Regular lon/lat grid over a box. Row 0 is the southern row, column 0 the
// western column; values are row-major. A coordinate lying exactly on an
// interior cell edge belongs to the lower-indexed cell (west / south).
struct GridShape {
  geo::GeoPoint origin;  // south-west corner
  double cell_size = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  // Throws InvalidArgument unless cell_size > 0.
  static GridShape covering(const geo::BBox& box, double cell_size);

  geo::BBox cell_box(std::size_t row, std::size_t col) const;
  std::size_t col_of(double lon) const noexcept;
  std::size_t row_of(double lat) const noexcept;
};

struct HeatGrid {
  GridShape shape;
  std::vector<double> values;
  double mass = 0.0;

  double at(std::size_t row, std::size_t col) const { return values[row * shape.cols + col]; }
};

// Counts points per cell, then (sigma > 0) spreads each cell's count with a
// separable Gaussian truncated at 3 sigma. Kernel weights falling outside the
// grid are dropped and the remainder renormalized, so the total mass stays the
// point count. Throws PointOutsideBox, or InvalidArgument for a bad cell size
// or negative sigma.
HeatGrid heat_grid(std::span<const geo::GeoPoint> points, const geo::BBox& box, double cell_size,
                   double smoothing_sigma_cells);

struct Dot {
  EntityId id;
  geo::GeoPoint location;
  std::string category;
};

struct DottedMap {
  std::vector<Dot> dots;
  std::size_t skipped = 0;  // entities without a location
};

DottedMap dotted_map(const Store& store, const geo::GeoIndex& index, std::span<const EntityId> entities,
                     const std::string& attribute, const CategoryMap& categories, Millis t);

}  // namespace holocity::analytics
