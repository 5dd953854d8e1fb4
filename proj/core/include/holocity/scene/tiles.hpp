#pragma once

#include <array>
#include <cstdint>

#include "holocity/geo/geometry.hpp"

namespace holocity::scene {

inline constexpr int kMaxZoom = 22;
inline constexpr double kMercatorMaxLat = 85.0511;

// Web-Mercator slippy tile address: x grows eastward, y grows southward.
struct TileKey {
  int z = 0;
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  // Throws Error(TileOutOfRange) unless 0 <= z <= 22 and x, y < 2^z.
  static TileKey make(int z, std::int64_t x, std::int64_t y);

  geo::BBox bbox() const;
  std::array<TileKey, 4> children() const;  // nw, ne, sw, se
  TileKey parent() const;                   // z must be > 0

  friend bool operator==(const TileKey&, const TileKey&) = default;
  friend auto operator<=>(const TileKey&, const TileKey&) = default;
};

// Northern edge latitude of tile row y at zoom z (row 2^z gives the southern
// limit).
double tile_row_lat(std::uint32_t y, int z);
double tile_col_lon(std::uint32_t x, int z);

// Tile containing p at zoom z: floor of the slippy formulas, clamped to
// 2^z - 1. Throws LatitudeOutOfRange beyond +-85.0511 degrees and
// TileOutOfRange for z outside 0..22.
TileKey tile_key_for(const geo::GeoPoint& p, int z);

}  // namespace holocity::scene
