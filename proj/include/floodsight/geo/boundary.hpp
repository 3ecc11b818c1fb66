#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace floodsight {

// One closed loop of lattice vertices (pixel corners). The loop is stored
// open (first vertex not repeated); consumers close it when exporting.
// Foreground lies on the left of the travel direction, so in image
// coordinates (y down) outer boundaries have negative shoelace area and
// holes positive; -signed_area of an outer loop equals its enclosed pixel
// count.
struct BoundaryLoop {
  std::vector<std::pair<int, int>> vertices;  // (x, y) lattice corners
  double signed_area = 0.0;
};

// Traces all region boundaries of a binary grid along pixel edges, treating
// the foreground as 4-connected (diagonally touching pixels yield separate
// loops).
std::vector<BoundaryLoop> trace_boundaries(int height, int width,
                                           const std::function<bool(int y, int x)>& foreground);

}  // namespace floodsight
