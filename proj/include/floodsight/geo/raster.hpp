#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "floodsight/common/error.hpp"
#include "floodsight/geo/geotransform.hpp"

namespace floodsight {

// Multi-channel pixel grid with an affine geotransform and a CRS tag.
// Channels are stored as contiguous planes (channel-major).
struct GeoRaster {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<double> data;  // channels * height * width
  GeoTransform transform;
  std::string crs;
  std::vector<std::string> channel_names;

  GeoRaster() = default;
  GeoRaster(int h, int w, int c, std::vector<std::string> names, GeoTransform gt = {},
            std::string crs_id = "")
      : height(h),
        width(w),
        channels(c),
        data(static_cast<std::size_t>(h) * w * c, 0.0),
        transform(gt),
        crs(std::move(crs_id)),
        channel_names(std::move(names)) {
    if (h < 1 || w < 1 || c < 1) throw InvalidInputError("raster dimensions must be positive");
    if (static_cast<int>(channel_names.size()) != c)
      throw InvalidInputError("channel_names length must equal channel count");
    if (!transform.valid()) throw InvalidInputError("invalid geotransform");
  }

  bool empty() const { return data.empty(); }
  std::size_t plane_size() const { return static_cast<std::size_t>(height) * width; }

  double* plane(int c) { return data.data() + plane_size() * c; }
  const double* plane(int c) const { return data.data() + plane_size() * c; }

  double& at(int c, int y, int x) { return data[plane_size() * c + static_cast<std::size_t>(y) * width + x]; }
  double at(int c, int y, int x) const {
    return data[plane_size() * c + static_cast<std::size_t>(y) * width + x];
  }

  GeoBox extent() const { return raster_extent(transform, width, height); }

  int channel_index(const std::string& name) const {
    for (int c = 0; c < channels; ++c)
      if (channel_names[c] == name) return c;
    return -1;
  }
};

// Per-pixel class grid; values 0-4 on the damage scale
// (0 = no building, 1 = no damage, 2 = minor, 3 = major, 4 = destroyed).
// The same type carries generic semantic class masks.
struct DamageMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> values;
  GeoTransform transform;
  std::string crs;

  DamageMask() = default;
  DamageMask(int h, int w, GeoTransform gt = {}, std::string crs_id = "")
      : height(h),
        width(w),
        values(static_cast<std::size_t>(h) * w, 0),
        transform(gt),
        crs(std::move(crs_id)) {
    if (h < 1 || w < 1) throw InvalidInputError("mask dimensions must be positive");
  }

  std::uint8_t& at(int y, int x) { return values[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int y, int x) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

inline constexpr int kDamageClasses = 5;
inline constexpr int kNoBuilding = 0;
inline constexpr int kNoDamage = 1;
inline constexpr int kMinorDamage = 2;
inline constexpr int kMajorDamage = 3;
inline constexpr int kDestroyed = 4;

}  // namespace floodsight
