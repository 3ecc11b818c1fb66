#pragma once

#include <cstddef>
#include <vector>

#include "floodsight/common/error.hpp"

namespace floodsight {

// Dense CHW tensor. Planes are contiguous, so a tensor maps directly onto a
// (channels x height*width) row-major matrix for GEMM-based convolution.
template <typename T>
struct Tensor {
  int c = 0, h = 0, w = 0;
  std::vector<T> v;

  Tensor() = default;
  Tensor(int c_, int h_, int w_)
      : c(c_), h(h_), w(w_), v(static_cast<std::size_t>(c_) * h_ * w_, T(0)) {
    if (c_ < 1 || h_ < 1 || w_ < 1) throw InvalidInputError("tensor dims must be positive");
  }

  std::size_t size() const { return v.size(); }
  std::size_t plane_size() const { return static_cast<std::size_t>(h) * w; }

  T* plane(int ci) { return v.data() + plane_size() * ci; }
  const T* plane(int ci) const { return v.data() + plane_size() * ci; }

  T& at(int ci, int y, int x) { return v[plane_size() * ci + static_cast<std::size_t>(y) * w + x]; }
  T at(int ci, int y, int x) const {
    return v[plane_size() * ci + static_cast<std::size_t>(y) * w + x];
  }

  void resize(int c_, int h_, int w_) {
    c = c_;
    h = h_;
    w = w_;
    v.assign(static_cast<std::size_t>(c_) * h_ * w_, T(0));
  }

  bool same_shape(const Tensor& o) const { return c == o.c && h == o.h && w == o.w; }
};

// Concatenate along channels.
template <typename T>
Tensor<T> concat_channels(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.h != b.h || a.w != b.w) throw InvalidInputError("concat: spatial shapes differ");
  Tensor<T> y(a.c + b.c, a.h, a.w);
  std::copy(a.v.begin(), a.v.end(), y.v.begin());
  std::copy(b.v.begin(), b.v.end(), y.v.begin() + static_cast<std::ptrdiff_t>(a.size()));
  return y;
}

}  // namespace floodsight
