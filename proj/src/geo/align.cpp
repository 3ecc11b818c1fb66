#include "floodsight/geo/align.hpp"

#include <algorithm>
#include <cmath>

namespace floodsight {

namespace {

double sample_nearest(const GeoRaster& src, double col, double row) {
  const int x = std::clamp(static_cast<int>(std::floor(col)), 0, src.width - 1);
  const int y = std::clamp(static_cast<int>(std::floor(row)), 0, src.height - 1);
  return src.at(0, y, x);
}

double sample_bilinear(const GeoRaster& src, double col, double row) {
  // Sample positions are in pixel-center coordinates.
  double fx = col - 0.5;
  double fy = row - 0.5;
  // Snap to the grid when the target lands on a source center, so identical
  // grids reproduce values bit-exactly.
  const double rx = std::round(fx), ry = std::round(fy);
  if (std::fabs(fx - rx) < 1e-6) fx = rx;
  if (std::fabs(fy - ry) < 1e-6) fy = ry;

  const int x0 = static_cast<int>(std::floor(fx));
  const int y0 = static_cast<int>(std::floor(fy));
  const double wx = fx - x0;
  const double wy = fy - y0;

  auto value = [&](int x, int y) {
    return src.at(0, std::clamp(y, 0, src.height - 1), std::clamp(x, 0, src.width - 1));
  };
  const double v00 = value(x0, y0), v10 = value(x0 + 1, y0);
  const double v01 = value(x0, y0 + 1), v11 = value(x0 + 1, y0 + 1);
  if (wx == 0.0 && wy == 0.0) return v00;
  return v00 * (1 - wx) * (1 - wy) + v10 * wx * (1 - wy) + v01 * (1 - wx) * wy + v11 * wx * wy;
}

}  // namespace

GeoRaster align_and_stack_hand(const GeoRaster& rgb, const GeoRaster& hand, Resampling resampling) {
  if (rgb.channels != 3) throw InvalidInputError("align_and_stack_hand: rgb must have 3 channels");
  if (hand.channels != 1) throw InvalidInputError("align_and_stack_hand: hand must have 1 channel");
  if (rgb.crs.empty() || hand.crs.empty())
    throw InvalidInputError("align_and_stack_hand: missing CRS");
  if (rgb.crs != hand.crs)
    throw InvalidInputError("align_and_stack_hand: CRS mismatch (" + rgb.crs + " vs " + hand.crs + ")");
  if (!rgb.extent().intersects(hand.extent()))
    throw AlignmentError("align_and_stack_hand: extents are disjoint");

  GeoRaster out(rgb.height, rgb.width, 4, {"R", "G", "B", "HAND"}, rgb.transform, rgb.crs);
  for (int c = 0; c < 3; ++c) {
    const double* src = rgb.plane(c);
    std::copy(src, src + rgb.plane_size(), out.plane(c));
  }

  double* hc = out.plane(3);
  for (int y = 0; y < rgb.height; ++y) {
    for (int x = 0; x < rgb.width; ++x) {
      const GeoPoint g = rgb.transform.pixel_center_to_geo(x, y);
      const GeoPoint p = hand.transform.geo_to_pixel(g.x, g.y);
      hc[static_cast<std::size_t>(y) * rgb.width + x] = resampling == Resampling::kNearest
                                                            ? sample_nearest(hand, p.x, p.y)
                                                            : sample_bilinear(hand, p.x, p.y);
    }
  }
  return out;
}

}  // namespace floodsight
