#pragma once

#include <string>
#include <vector>

#include "floodsight/geo/raster.hpp"

namespace floodsight {

enum class GeoTiffDataType { kUint8, kFloat32, kFloat64 };

// Writes an uncompressed little-endian GeoTIFF (single strip, chunky pixel
// layout) carrying ModelPixelScale/ModelTiepoint and the CRS as a geokey.
void write_geotiff(const GeoRaster& raster, const std::string& path,
                   GeoTiffDataType type = GeoTiffDataType::kFloat64);

// Reads uncompressed striped GeoTIFFs (uint8/16, float32/64, chunky or
// planar). channel_names override the defaults inferred from channel count.
GeoRaster read_geotiff(const std::string& path, std::vector<std::string> channel_names = {});

}  // namespace floodsight
