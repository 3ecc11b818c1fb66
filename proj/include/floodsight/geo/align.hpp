#pragma once

#include "floodsight/geo/raster.hpp"

namespace floodsight {

enum class Resampling { kNearest, kBilinear };

// Resamples the single-channel HAND raster onto the RGB pixel grid and
// appends it as a fourth channel. The output inherits the RGB geotransform;
// channel names become [R, G, B, HAND]. Samples outside the HAND extent are
// edge-clamped.
GeoRaster align_and_stack_hand(const GeoRaster& rgb, const GeoRaster& hand,
                               Resampling resampling = Resampling::kBilinear);

}  // namespace floodsight
