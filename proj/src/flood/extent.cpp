#include "floodsight/flood/extent.hpp"

#include <json.hpp>

namespace floodsight {

double FloodExtent::enclosed_pixel_total() const {
  double total = 0.0;
  for (const BoundaryLoop& l : loops) total -= l.signed_area;
  return total;
}

FloodExtent extract_flood_extent(const DamageMask& mask, int water_class) {
  if (water_class < 0 || water_class > 255)
    throw InvalidInputError("extract_flood_extent: bad water class");

  FloodExtent out;
  out.water = GeoRaster(mask.height, mask.width, 1, {"WATER"}, mask.transform, mask.crs);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) {
      const bool w = mask.at(y, x) == water_class;
      out.water.at(0, y, x) = w ? 1.0 : 0.0;
      if (w) ++out.water_pixels;
    }

  out.loops = trace_boundaries(mask.height, mask.width,
                               [&](int y, int x) { return mask.at(y, x) == water_class; });

  out.boundaries.reserve(out.loops.size());
  for (const BoundaryLoop& loop : out.loops) {
    std::vector<GeoPoint> line;
    line.reserve(loop.vertices.size() + 1);
    for (const auto& [x, y] : loop.vertices) line.push_back(mask.transform.pixel_to_geo(x, y));
    line.push_back(line.front());  // close the ring
    out.boundaries.push_back(std::move(line));
  }
  return out;
}

std::string flood_boundaries_to_geojson(const FloodExtent& extent) {
  nlohmann::json features = nlohmann::json::array();
  for (std::size_t i = 0; i < extent.boundaries.size(); ++i) {
    nlohmann::json coords = nlohmann::json::array();
    for (const GeoPoint& p : extent.boundaries[i]) coords.push_back({p.x, p.y});
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                        {"properties",
                         {{"loop", i},
                          {"enclosed_pixels", -extent.loops[i].signed_area}}}});
  }
  nlohmann::json fc = {{"type", "FeatureCollection"}, {"features", features}};
  return fc.dump(2);
}

}  // namespace floodsight
