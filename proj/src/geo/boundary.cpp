#include "floodsight/geo/boundary.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>

#include "floodsight/common/error.hpp"

namespace floodsight {

namespace {

// Directions: 0 = right, 1 = down, 2 = left, 3 = up (image coords, y down).
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

struct DirectedEdge {
  int x, y;    // start vertex
  int dir;     // 0..3
  bool visited = false;
};

}  // namespace

std::vector<BoundaryLoop> trace_boundaries(int height, int width,
                                           const std::function<bool(int y, int x)>& foreground) {
  if (height < 1 || width < 1) throw InvalidInputError("trace_boundaries: empty grid");

  auto fg = [&](int y, int x) {
    return y >= 0 && y < height && x >= 0 && x < width && foreground(y, x);
  };

  // Every side of a foreground pixel facing background contributes one
  // directed edge with the pixel on its left.
  std::vector<DirectedEdge> edges;
  std::unordered_map<std::int64_t, std::array<int, 2>> outgoing;  // vertex -> up to 2 edge ids
  auto vertex_key = [&](int x, int y) {
    return static_cast<std::int64_t>(y) * (width + 2) + x;
  };
  auto add_edge = [&](int x, int y, int dir) {
    auto [it, inserted] = outgoing.try_emplace(vertex_key(x, y), std::array<int, 2>{-1, -1});
    auto& slots = it->second;
    const int id = static_cast<int>(edges.size());
    edges.push_back({x, y, dir});
    slots[slots[0] < 0 ? 0 : 1] = id;
  };

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!fg(y, x)) continue;
      if (!fg(y - 1, x)) add_edge(x + 1, y, 2);      // top side, leftward
      if (!fg(y + 1, x)) add_edge(x, y + 1, 0);      // bottom side, rightward
      if (!fg(y, x - 1)) add_edge(x, y, 1);          // left side, downward
      if (!fg(y, x + 1)) add_edge(x + 1, y + 1, 3);  // right side, upward
    }
  }

  std::vector<BoundaryLoop> loops;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (edges[start].visited) continue;
    BoundaryLoop loop;
    std::size_t cur = start;
    while (!edges[cur].visited) {
      DirectedEdge& e = edges[cur];
      e.visited = true;
      loop.vertices.emplace_back(e.x, e.y);
      const int nx = e.x + kDx[e.dir];
      const int ny = e.y + kDy[e.dir];
      const auto it = outgoing.find(vertex_key(nx, ny));
      if (it == outgoing.end()) throw std::logic_error("boundary trace: open chain");
      // At an ambiguous vertex two continuations exist; the left turn keeps
      // the foreground 4-connected.
      int next = -1, best_cross = 2;
      for (int slot : it->second) {
        if (slot < 0) continue;
        const DirectedEdge& cand = edges[static_cast<std::size_t>(slot)];
        const int cross = kDx[e.dir] * kDy[cand.dir] - kDy[e.dir] * kDx[cand.dir];
        if (cross < best_cross) {
          best_cross = cross;
          next = slot;
        }
      }
      if (next < 0) throw std::logic_error("boundary trace: no continuation");
      cur = static_cast<std::size_t>(next);
    }
    double area2 = 0.0;
    const auto& v = loop.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& [x0, y0] = v[i];
      const auto& [x1, y1] = v[(i + 1) % v.size()];
      area2 += static_cast<double>(x0) * y1 - static_cast<double>(x1) * y0;
    }
    loop.signed_area = 0.5 * area2;
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace floodsight
