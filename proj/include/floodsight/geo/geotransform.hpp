#pragma once

#include <algorithm>
#include <cmath>

namespace floodsight {

struct GeoPoint {
  double x = 0.0;  // longitude or projected x
  double y = 0.0;
};

// Axis-aligned affine mapping between pixel indices and geographic
// coordinates. (origin_x, origin_y) is the outer corner of pixel (0,0);
// rotation terms are fixed at zero.
struct GeoTransform {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double pixel_size_x = 1.0;   // > 0
  double pixel_size_y = -1.0;  // != 0, negative for north-up rasters

  bool valid() const { return pixel_size_x > 0.0 && pixel_size_y != 0.0; }

  // col/row may be fractional; (0,0) maps to the origin corner.
  GeoPoint pixel_to_geo(double col, double row) const {
    return {origin_x + col * pixel_size_x, origin_y + row * pixel_size_y};
  }

  GeoPoint pixel_center_to_geo(int col, int row) const {
    return pixel_to_geo(col + 0.5, row + 0.5);
  }

  // Inverse mapping; returns fractional pixel coordinates.
  GeoPoint geo_to_pixel(double gx, double gy) const {
    return {(gx - origin_x) / pixel_size_x, (gy - origin_y) / pixel_size_y};
  }

  // Transform of the tile whose top-left pixel is (col0, row0) in this grid.
  GeoTransform shifted(int col0, int row0) const {
    GeoPoint o = pixel_to_geo(col0, row0);
    return {o.x, o.y, pixel_size_x, pixel_size_y};
  }

  bool almost_equal(const GeoTransform& other, double tol = 1e-9) const {
    return std::fabs(origin_x - other.origin_x) <= tol &&
           std::fabs(origin_y - other.origin_y) <= tol &&
           std::fabs(pixel_size_x - other.pixel_size_x) <= tol &&
           std::fabs(pixel_size_y - other.pixel_size_y) <= tol;
  }
};

struct GeoBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  bool intersects(const GeoBox& o) const {
    return min_x < o.max_x && o.min_x < max_x && min_y < o.max_y && o.min_y < max_y;
  }
  bool contains(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
  double center_x() const { return 0.5 * (min_x + max_x); }
  double center_y() const { return 0.5 * (min_y + max_y); }
};

inline GeoBox raster_extent(const GeoTransform& gt, int width, int height) {
  const GeoPoint a = gt.pixel_to_geo(0, 0);
  const GeoPoint b = gt.pixel_to_geo(width, height);
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

}  // namespace floodsight
