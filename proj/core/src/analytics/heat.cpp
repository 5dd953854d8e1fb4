#include "holocity/analytics/heat.hpp"

#include <algorithm>
#include <cmath>

#include "holocity/analytics/region.hpp"
#include "holocity/error.hpp"

namespace holocity::analytics {
namespace {

std::size_t cells_along(double extent, double cell) {
  // The epsilon keeps an exact multiple (1.0 / 0.25) from growing a sliver
  // column out of rounding noise.
  const double n = std::ceil(extent / cell - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, n)));
}

std::size_t index_along(double coord, double origin, double cell, std::size_t n) noexcept {
  const double f = (coord - origin) / cell;
  const double idx = std::ceil(f) - 1.0;
  if (idx <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(idx), n - 1);
}

std::vector<double> gaussian_kernel(double sigma, int radius) {
  std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
  for (int k = -radius; k <= radius; ++k) {
    w[static_cast<std::size_t>(k + radius)] = std::exp(-(k * k) / (2.0 * sigma * sigma));
  }
  return w;
}

// Scatters every source cell along one axis with the kernel clipped to the
// grid and renormalized over what remains.
void scatter_axis(std::vector<double>& values, std::size_t rows, std::size_t cols, bool along_cols,
                  const std::vector<double>& kernel, int radius) {
  std::vector<double> out(values.size(), 0.0);
  const std::size_t lines = along_cols ? rows : cols;
  const std::size_t len = along_cols ? cols : rows;
  auto at = [&](std::size_t line, std::size_t pos) {
    return along_cols ? line * cols + pos : pos * cols + line;
  };
  for (std::size_t line = 0; line < lines; ++line) {
    for (std::size_t i = 0; i < len; ++i) {
      const double v = values[at(line, i)];
      if (v == 0.0) continue;
      const auto lo = static_cast<std::ptrdiff_t>(i) - radius;
      const std::size_t first = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, lo));
      const std::size_t last = std::min(len - 1, i + static_cast<std::size_t>(radius));
      double norm = 0.0;
      for (std::size_t j = first; j <= last; ++j) norm += kernel[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(j) - lo)];
      for (std::size_t j = first; j <= last; ++j) {
        out[at(line, j)] += v * kernel[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(j) - lo)] / norm;
      }
    }
  }
  values = std::move(out);
}

}  // namespace

GridShape GridShape::covering(const geo::BBox& box, double cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw Error(ErrorCode::InvalidArgument, "cell size must be positive");
  }
  GridShape s;
  s.origin.lon = box.min_lon;
  s.origin.lat = box.min_lat;
  s.cell_size = cell_size;
  s.cols = cells_along(box.width(), cell_size);
  s.rows = cells_along(box.height(), cell_size);
  return s;
}

geo::BBox GridShape::cell_box(std::size_t row, std::size_t col) const {
  const double w = origin.lon + static_cast<double>(col) * cell_size;
  const double s = origin.lat + static_cast<double>(row) * cell_size;
  return geo::BBox(w, s, std::min(180.0, w + cell_size), std::min(90.0, s + cell_size));
}

std::size_t GridShape::col_of(double lon) const noexcept { return index_along(lon, origin.lon, cell_size, cols); }
std::size_t GridShape::row_of(double lat) const noexcept { return index_along(lat, origin.lat, cell_size, rows); }

HeatGrid heat_grid(std::span<const geo::GeoPoint> points, const geo::BBox& box, double cell_size,
                   double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::InvalidArgument, "sigma must be >= 0");
  HeatGrid g;
  g.shape = GridShape::covering(box, cell_size);
  g.values.assign(g.shape.rows * g.shape.cols, 0.0);
  for (const auto& p : points) {
    if (!box.contains(p)) {
      throw Error(ErrorCode::PointOutsideBox, "(" + std::to_string(p.lon) + ", " + std::to_string(p.lat) + ")");
    }
    g.values[g.shape.row_of(p.lat) * g.shape.cols + g.shape.col_of(p.lon)] += 1.0;
  }
  if (sigma > 0.0) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const auto kernel = gaussian_kernel(sigma, radius);
    scatter_axis(g.values, g.shape.rows, g.shape.cols, true, kernel, radius);
    scatter_axis(g.values, g.shape.rows, g.shape.cols, false, kernel, radius);
  }
  for (double v : g.values) g.mass += v;
  return g;
}

DottedMap dotted_map(const Store& store, const geo::GeoIndex& index, std::span<const EntityId> entities,
                     const std::string& attribute, const CategoryMap& categories, Millis t) {
  DottedMap out;
  for (const auto& id : entities) {
    auto loc = locate_entity(store, index, id, t);
    if (!loc) {
      ++out.skipped;
      continue;
    }
    std::optional<Scalar> value;
    if (auto state = store.state_at(id, t)) {
      if (auto it = state->attributes.find(attribute); it != state->attributes.end()) value = it->second;
    }
    out.dots.push_back(Dot{id, *loc, categories.label(value)});
  }
  return out;
}

}  // namespace holocity::analytics
