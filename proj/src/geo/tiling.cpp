#include "floodsight/geo/tiling.hpp"

#include <algorithm>

namespace floodsight {

TileSet tile_raster(const GeoRaster& raster, int tile_size, double pad_value) {
  if (raster.empty()) throw InvalidInputError("tile_raster: empty raster");
  const TileGridShape shape = tile_grid_shape(raster.height, raster.width, tile_size);

  TileSet out;
  out.rows = shape.rows;
  out.cols = shape.cols;
  out.tile_size = tile_size;
  out.source_height = raster.height;
  out.source_width = raster.width;
  out.source_extent = raster.extent();
  out.pad_value = pad_value;
  out.tiles.reserve(static_cast<std::size_t>(shape.count()));

  for (int tr = 0; tr < shape.rows; ++tr) {
    for (int tc = 0; tc < shape.cols; ++tc) {
      const int y0 = tr * tile_size;
      const int x0 = tc * tile_size;
      GeoRaster tile(tile_size, tile_size, raster.channels, raster.channel_names,
                     raster.transform.shifted(x0, y0), raster.crs);
      const int copy_h = std::min(tile_size, raster.height - y0);
      const int copy_w = std::min(tile_size, raster.width - x0);
      for (int c = 0; c < raster.channels; ++c) {
        double* dst = tile.plane(c);
        const double* src = raster.plane(c);
        for (int y = 0; y < tile_size; ++y) {
          double* row = dst + static_cast<std::size_t>(y) * tile_size;
          if (y < copy_h) {
            const double* srow = src + static_cast<std::size_t>(y0 + y) * raster.width + x0;
            std::copy(srow, srow + copy_w, row);
            std::fill(row + copy_w, row + tile_size, pad_value);
          } else {
            std::fill(row, row + tile_size, pad_value);
          }
        }
      }
      out.tiles.push_back(std::move(tile));
    }
  }
  return out;
}

GeoRaster reassemble(const TileSet& ts) {
  if (ts.tiles.empty()) throw InvalidInputError("reassemble: no tiles");
  if (static_cast<int>(ts.tiles.size()) != ts.rows * ts.cols)
    throw InvalidInputError("reassemble: tile count does not match grid shape");
  const GeoRaster& first = ts.tiles.front();
  for (const GeoRaster& t : ts.tiles) {
    if (t.height != ts.tile_size || t.width != ts.tile_size || t.channels != first.channels)
      throw InvalidInputError("reassemble: inconsistent tile sizes");
  }

  GeoRaster out(ts.source_height, ts.source_width, first.channels, first.channel_names,
                first.transform, first.crs);
  for (int tr = 0; tr < ts.rows; ++tr) {
    for (int tc = 0; tc < ts.cols; ++tc) {
      const GeoRaster& tile = ts.tile(tr, tc);
      const int y0 = tr * ts.tile_size;
      const int x0 = tc * ts.tile_size;
      const int copy_h = std::min(ts.tile_size, ts.source_height - y0);
      const int copy_w = std::min(ts.tile_size, ts.source_width - x0);
      for (int c = 0; c < out.channels; ++c) {
        const double* src = tile.plane(c);
        double* dst = out.plane(c);
        for (int y = 0; y < copy_h; ++y) {
          const double* srow = src + static_cast<std::size_t>(y) * ts.tile_size;
          std::copy(srow, srow + copy_w, dst + static_cast<std::size_t>(y0 + y) * out.width + x0);
        }
      }
    }
  }
  return out;
}

}  // namespace floodsight
