#pragma once

#include <string>

#include "floodsight/geo/raster.hpp"

namespace floodsight {

// Single-channel 8-bit grayscale PNG; the interchange format for class masks
// (pixel values 0-4). Geotransform/CRS are not stored in PNG; callers attach
// them from the paired imagery.
void write_mask_png(const DamageMask& mask, const std::string& path);
DamageMask read_mask_png(const std::string& path);

// 8-bit RGB PNG -> 3-channel raster scaled to [0,1] (for externally supplied
// image pairs without geo metadata).
GeoRaster read_rgb_png(const std::string& path);

}  // namespace floodsight
