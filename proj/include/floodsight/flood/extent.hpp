#pragma once

#include <string>
#include <vector>

#include "floodsight/geo/boundary.hpp"
#include "floodsight/geo/geotransform.hpp"
#include "floodsight/geo/raster.hpp"

namespace floodsight {

// Water extent of a class mask: a binary raster plus the water/land boundary
// ("flood lines") as closed polylines in geographic coordinates.
struct FloodExtent {
  GeoRaster water;                             // single channel, values 0/1
  std::vector<BoundaryLoop> loops;             // pixel-corner loops
  std::vector<std::vector<GeoPoint>> boundaries;  // same loops in geo coords, closed
  std::int64_t water_pixels = 0;

  // Sum over loops of enclosed pixels (holes subtract).
  double enclosed_pixel_total() const;
};

FloodExtent extract_flood_extent(const DamageMask& mask, int water_class);

// RFC 7946 FeatureCollection of LineString flood lines.
std::string flood_boundaries_to_geojson(const FloodExtent& extent);

}  // namespace floodsight
