#include "floodsight/geo/augment.hpp"

#include <cmath>

#include "floodsight/common/rng.hpp"

namespace floodsight {

namespace {

inline bool is_hand_channel(const GeoRaster& r, int c) { return r.channel_names[c] == "HAND"; }

template <typename Get, typename Set>
void rotate_grid(int h, int w, int quarters, Get get, Set set) {
  // Counterclockwise quarter turns; output dims swap for odd turns.
  for (int y = 0; y < (quarters % 2 ? w : h); ++y) {
    for (int x = 0; x < (quarters % 2 ? h : w); ++x) {
      int sy = y, sx = x;
      switch (quarters & 3) {
        case 1: sy = x; sx = w - 1 - y; break;
        case 2: sy = h - 1 - y; sx = w - 1 - x; break;
        case 3: sy = h - 1 - x; sx = y; break;
        default: break;
      }
      set(y, x, get(sy, sx));
    }
  }
}

}  // namespace

GeoRaster rotate_quarters(const GeoRaster& tile, int quarters) {
  quarters &= 3;
  if (quarters == 0) return tile;
  const bool swap = quarters % 2 != 0;
  GeoRaster out(swap ? tile.width : tile.height, swap ? tile.height : tile.width, tile.channels,
                tile.channel_names, tile.transform, tile.crs);
  for (int c = 0; c < tile.channels; ++c) {
    rotate_grid(
        tile.height, tile.width, quarters, [&](int y, int x) { return tile.at(c, y, x); },
        [&](int y, int x, double v) { out.at(c, y, x) = v; });
  }
  return out;
}

DamageMask rotate_quarters(const DamageMask& mask, int quarters) {
  quarters &= 3;
  if (quarters == 0) return mask;
  const bool swap = quarters % 2 != 0;
  DamageMask out(swap ? mask.width : mask.height, swap ? mask.height : mask.width, mask.transform,
                 mask.crs);
  rotate_grid(
      mask.height, mask.width, quarters, [&](int y, int x) { return mask.at(y, x); },
      [&](int y, int x, std::uint8_t v) { out.at(y, x) = v; });
  return out;
}

namespace {

void rotate_arbitrary(const GeoRaster& tile, const DamageMask& mask, double angle, GeoRaster& out_tile,
                      DamageMask& out_mask) {
  const double cy = 0.5 * tile.height, cx = 0.5 * tile.width;
  const double ca = std::cos(angle), sa = std::sin(angle);
  for (int y = 0; y < tile.height; ++y) {
    for (int x = 0; x < tile.width; ++x) {
      // Inverse-rotate the output pixel center into the source frame.
      const double dy = y + 0.5 - cy, dx = x + 0.5 - cx;
      const double sxf = ca * dx + sa * dy + cx - 0.5;
      const double syf = -sa * dx + ca * dy + cy - 0.5;
      const int x0 = static_cast<int>(std::floor(sxf));
      const int y0 = static_cast<int>(std::floor(syf));
      const double wx = sxf - x0, wy = syf - y0;
      auto inside = [&](int xx, int yy) { return xx >= 0 && xx < tile.width && yy >= 0 && yy < tile.height; };
      for (int c = 0; c < tile.channels; ++c) {
        auto v = [&](int xx, int yy) { return inside(xx, yy) ? tile.at(c, yy, xx) : 0.0; };
        out_tile.at(c, y, x) = v(x0, y0) * (1 - wx) * (1 - wy) + v(x0 + 1, y0) * wx * (1 - wy) +
                               v(x0, y0 + 1) * (1 - wx) * wy + v(x0 + 1, y0 + 1) * wx * wy;
      }
      const int nx = static_cast<int>(std::lround(sxf));
      const int ny = static_cast<int>(std::lround(syf));
      out_mask.at(y, x) = inside(nx, ny) ? mask.at(ny, nx) : 0;
    }
  }
}

}  // namespace

std::pair<GeoRaster, DamageMask> augment(const GeoRaster& tile, const DamageMask& mask,
                                         std::uint64_t seed, const AugmentConfig& config) {
  if (tile.height != mask.height || tile.width != mask.width)
    throw InvalidInputError("augment: tile and mask shapes differ");
  if (config.rotation_quarters.empty()) throw InvalidInputError("augment: empty rotation set");

  Rng rng(mix_seed(seed, 0x41554700 /* stream tag */));
  GeoRaster out_tile = tile;
  DamageMask out_mask = mask;

  if (config.arbitrary_rotation) {
    const double angle = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    GeoRaster rt(tile.height, tile.width, tile.channels, tile.channel_names, tile.transform, tile.crs);
    DamageMask rm(mask.height, mask.width, mask.transform, mask.crs);
    rotate_arbitrary(tile, mask, angle, rt, rm);
    out_tile = std::move(rt);
    out_mask = std::move(rm);
  } else {
    const int q = config.rotation_quarters[static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::uint64_t>(config.rotation_quarters.size())))];
    out_tile = rotate_quarters(out_tile, q);
    out_mask = rotate_quarters(out_mask, q);
  }

  const double delta = rng.uniform(-config.brightness_delta, config.brightness_delta);
  const double contrast = rng.uniform(1.0 - config.contrast_delta, 1.0 + config.contrast_delta);
  if (config.brightness_delta != 0.0 || config.contrast_delta != 0.0) {
    for (int c = 0; c < out_tile.channels; ++c) {
      if (is_hand_channel(out_tile, c)) continue;
      double* p = out_tile.plane(c);
      for (std::size_t i = 0; i < out_tile.plane_size(); ++i) p[i] = p[i] * contrast + delta;
    }
  }
  return {std::move(out_tile), std::move(out_mask)};
}

}  // namespace floodsight
