#include "holocity/scene/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holocity/error.hpp"

namespace holocity::scene {
namespace {

double tiles_at(int z) { return std::ldexp(1.0, z); }

void check_zoom(int z) {
  if (z < 0 || z > kMaxZoom) throw Error(ErrorCode::TileOutOfRange, "zoom " + std::to_string(z));
}

}  // namespace

TileKey TileKey::make(int z, std::int64_t x, std::int64_t y) {
  check_zoom(z);
  const std::int64_t n = std::int64_t{1} << z;
  if (x < 0 || y < 0 || x >= n || y >= n) {
    throw Error(ErrorCode::TileOutOfRange,
                std::to_string(z) + "/" + std::to_string(x) + "/" + std::to_string(y));
  }
  return TileKey{z, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)};
}

double tile_col_lon(std::uint32_t x, int z) { return static_cast<double>(x) / tiles_at(z) * 360.0 - 180.0; }

double tile_row_lat(std::uint32_t y, int z) {
  const double n = std::numbers::pi * (1.0 - 2.0 * static_cast<double>(y) / tiles_at(z));
  return std::atan(std::sinh(n)) * 180.0 / std::numbers::pi;
}

geo::BBox TileKey::bbox() const {
  return geo::BBox(tile_col_lon(x, z), tile_row_lat(y + 1, z), tile_col_lon(x + 1, z), tile_row_lat(y, z));
}

std::array<TileKey, 4> TileKey::children() const {
  const int cz = z + 1;
  check_zoom(cz);
  return {TileKey{cz, 2 * x, 2 * y}, TileKey{cz, 2 * x + 1, 2 * y}, TileKey{cz, 2 * x, 2 * y + 1},
          TileKey{cz, 2 * x + 1, 2 * y + 1}};
}

TileKey TileKey::parent() const {
  if (z == 0) throw Error(ErrorCode::TileOutOfRange, "zoom 0 has no parent");
  return TileKey{z - 1, x / 2, y / 2};
}

TileKey tile_key_for(const geo::GeoPoint& p, int z) {
  check_zoom(z);
  if (std::fabs(p.lat) > kMercatorMaxLat) {
    throw Error(ErrorCode::LatitudeOutOfRange, std::to_string(p.lat));
  }
  const double n = tiles_at(z);
  const auto last = static_cast<std::int64_t>(n) - 1;

  auto x = static_cast<std::int64_t>(std::floor((p.lon + 180.0) / 360.0 * n));
  const double phi = p.lat * std::numbers::pi / 180.0;
  auto y = static_cast<std::int64_t>(
      std::floor((1.0 - std::log(std::tan(phi) + 1.0 / std::cos(phi)) / std::numbers::pi) / 2.0 * n));
  x = std::clamp<std::int64_t>(x, 0, last);
  y = std::clamp<std::int64_t>(y, 0, last);

  // The forward formulas and the edge formulas used by bbox() round
  // independently; nudge by one cell where they disagree so the returned
  // tile's box always contains p.
  if (x > 0 && p.lon < tile_col_lon(static_cast<std::uint32_t>(x), z)) --x;
  if (x < last && p.lon >= tile_col_lon(static_cast<std::uint32_t>(x + 1), z)) ++x;
  if (y > 0 && p.lat > tile_row_lat(static_cast<std::uint32_t>(y), z)) --y;
  if (y < last && p.lat <= tile_row_lat(static_cast<std::uint32_t>(y + 1), z)) ++y;
  return TileKey{z, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)};
}

}  // namespace holocity::scene
