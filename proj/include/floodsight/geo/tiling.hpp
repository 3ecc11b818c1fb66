#pragma once

#include <vector>

#include "floodsight/geo/raster.hpp"

namespace floodsight {

struct TileGridShape {
  int rows = 0;
  int cols = 0;
  int count() const { return rows * cols; }
};

// Ceiling division; usable for arbitrarily large sources without allocating.
inline TileGridShape tile_grid_shape(int height, int width, int tile_size) {
  if (tile_size < 1) throw InvalidInputError("tile_size must be >= 1");
  if (height < 1 || width < 1) throw InvalidInputError("empty raster");
  return {(height + tile_size - 1) / tile_size, (width + tile_size - 1) / tile_size};
}

// Fixed-size tiles covering a source raster; edge tiles are padded with
// pad_value on the bottom/right so reassembly is exact.
struct TileSet {
  std::vector<GeoRaster> tiles;  // row-major
  int rows = 0;
  int cols = 0;
  int tile_size = 0;
  int source_height = 0;
  int source_width = 0;
  GeoBox source_extent;
  double pad_value = 0.0;

  const GeoRaster& tile(int r, int c) const { return tiles[static_cast<std::size_t>(r) * cols + c]; }
};

TileSet tile_raster(const GeoRaster& raster, int tile_size, double pad_value = 0.0);

// Inverse of tile_raster: rebuilds the source raster with padding cropped.
GeoRaster reassemble(const TileSet& tiles);

}  // namespace floodsight
