#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "floodsight/geo/raster.hpp"

namespace floodsight {

struct AugmentConfig {
  // Allowed quarter-turn rotations (lossless for masks). One is drawn
  // uniformly per call; {0} disables rotation.
  std::vector<int> rotation_quarters{0, 1, 2, 3};
  // Photometric jitter, applied to non-HAND channels only: x*contrast + delta
  // with delta ~ U[-brightness_delta, +brightness_delta] and
  // contrast ~ U[1-contrast_delta, 1+contrast_delta]. Zero disables.
  double brightness_delta = 0.1;
  double contrast_delta = 0.1;
  // Arbitrary-angle rotation (bilinear for imagery, nearest for the mask,
  // pad 0 / class 0 outside). Replaces the quarter-turn draw when enabled.
  bool arbitrary_rotation = false;
};

// Deterministic per seed. The same geometric transform is applied to tile and
// mask; photometric jitter never touches HAND channels or the mask.
std::pair<GeoRaster, DamageMask> augment(const GeoRaster& tile, const DamageMask& mask,
                                         std::uint64_t seed, const AugmentConfig& config);

// Quarter-turn helpers (counterclockwise), exposed for tests.
GeoRaster rotate_quarters(const GeoRaster& tile, int quarters);
DamageMask rotate_quarters(const DamageMask& mask, int quarters);

}  // namespace floodsight
