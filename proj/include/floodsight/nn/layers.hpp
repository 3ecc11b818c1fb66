#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "floodsight/common/rng.hpp"
#include "floodsight/nn/tensor.hpp"

namespace floodsight {

// Parameter tensor with its gradient, reachable through visit_params on the
// owning model; visitation order is the serialization order.
template <typename T>
struct Param {
  std::vector<T> value;
  std::vector<T> grad;

  void init_size(std::size_t n) {
    value.assign(n, T(0));
    grad.assign(n, T(0));
  }
  void zero_grad() { std::fill(grad.begin(), grad.end(), T(0)); }
};

template <typename T>
using ParamVisitor = std::function<void(const std::string& name, Param<T>& p)>;

template <typename T>
using EigenMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MatMap = Eigen::Map<EigenMatrix<T>>;
template <typename T>
using ConstMatMap = Eigen::Map<const EigenMatrix<T>>;

template <typename T>
struct ConvCtx {
  std::vector<T> cols;   // im2col matrix (k=3) or input copy (k=1)
  int h = 0, w = 0;      // spatial dims of the input
};

// Stride-1 convolution, kernel 3x3 (pad 1) or 1x1 (pad 0), with bias.
// Weight layout: [out][in*k*k] with kernel row index (ci*k + ky)*k + kx,
// matching the im2col row order.
template <typename T>
struct Conv2d {
  int in_ch = 0, out_ch = 0, k = 3;
  Param<T> weight;
  Param<T> bias;

  Conv2d() = default;
  Conv2d(int in, int out, int ksize) : in_ch(in), out_ch(out), k(ksize) {
    weight.init_size(static_cast<std::size_t>(out) * in * k * k);
    bias.init_size(static_cast<std::size_t>(out));
  }

  std::size_t param_count() const { return weight.value.size() + bias.value.size(); }

  void init(Rng& rng) {
    const double stddev = std::sqrt(2.0 / (static_cast<double>(in_ch) * k * k));
    for (T& v : weight.value) v = static_cast<T>(rng.normal() * stddev);
    std::fill(bias.value.begin(), bias.value.end(), T(0));
  }

  void visit(const std::string& prefix, const ParamVisitor<T>& fn) {
    fn(prefix + ".weight", weight);
    fn(prefix + ".bias", bias);
  }

  Tensor<T> forward(const Tensor<T>& x, ConvCtx<T>& ctx) const {
    if (x.c != in_ch) throw InvalidInputError("conv: channel mismatch");
    ctx.h = x.h;
    ctx.w = x.w;
    const Eigen::Index hw = static_cast<Eigen::Index>(x.plane_size());
    Tensor<T> y(out_ch, x.h, x.w);
    MatMap<T> ym(y.v.data(), out_ch, hw);
    ConstMatMap<T> wm(weight.value.data(), out_ch, static_cast<Eigen::Index>(in_ch) * k * k);

    if (k == 1) {
      ctx.cols = x.v;  // dW needs the input
      ConstMatMap<T> xm(x.v.data(), in_ch, hw);
      ym.noalias() = wm * xm;
    } else {
      im2col(x, ctx.cols);
      ConstMatMap<T> cm(ctx.cols.data(), static_cast<Eigen::Index>(in_ch) * 9, hw);
      ym.noalias() = wm * cm;
    }
    for (int o = 0; o < out_ch; ++o) {
      T* p = y.plane(o);
      const T b = bias.value[static_cast<std::size_t>(o)];
      for (std::size_t i = 0; i < y.plane_size(); ++i) p[i] += b;
    }
    return y;
  }

  // Accumulates parameter gradients and returns the input gradient.
  Tensor<T> backward(const Tensor<T>& dy, const ConvCtx<T>& ctx) {
    const Eigen::Index hw = static_cast<Eigen::Index>(dy.plane_size());
    const Eigen::Index rows = static_cast<Eigen::Index>(in_ch) * k * k;
    ConstMatMap<T> dym(dy.v.data(), out_ch, hw);
    ConstMatMap<T> cm(ctx.cols.data(), rows, hw);
    MatMap<T> wgm(weight.grad.data(), out_ch, rows);
    ConstMatMap<T> wm(weight.value.data(), out_ch, rows);

    wgm.noalias() += dym * cm.transpose();
    for (int o = 0; o < out_ch; ++o)
      bias.grad[static_cast<std::size_t>(o)] += dym.row(o).sum();

    Tensor<T> dx(in_ch, ctx.h, ctx.w);
    if (k == 1) {
      MatMap<T> dxm(dx.v.data(), in_ch, hw);
      dxm.noalias() = wm.transpose() * dym;
    } else {
      EigenMatrix<T> dcols(rows, hw);
      dcols.noalias() = wm.transpose() * dym;
      col2im(dcols, dx);
    }
    return dx;
  }

 private:
  void im2col(const Tensor<T>& x, std::vector<T>& cols) const {
    const int h = x.h, w = x.w;
    cols.assign(static_cast<std::size_t>(in_ch) * 9 * x.plane_size(), T(0));
    const std::size_t hw = x.plane_size();
    for (int ci = 0; ci < in_ch; ++ci) {
      const T* xp = x.plane(ci);
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          T* row = cols.data() + (static_cast<std::size_t>(ci) * 9 + ky * 3 + kx) * hw;
          const int y0 = std::max(0, 1 - ky), y1 = std::min(h, h + 1 - ky);
          const int x0 = std::max(0, 1 - kx), x1 = std::min(w, w + 1 - kx);
          for (int y = y0; y < y1; ++y) {
            const T* src = xp + static_cast<std::size_t>(y + ky - 1) * w + (x0 + kx - 1);
            std::copy(src, src + (x1 - x0), row + static_cast<std::size_t>(y) * w + x0);
          }
        }
      }
    }
  }

  void col2im(const EigenMatrix<T>& dcols, Tensor<T>& dx) const {
    const int h = dx.h, w = dx.w;
    const std::size_t hw = dx.plane_size();
    for (int ci = 0; ci < in_ch; ++ci) {
      T* dxp = dx.plane(ci);
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const T* row = dcols.data() + (static_cast<std::size_t>(ci) * 9 + ky * 3 + kx) * hw;
          const int y0 = std::max(0, 1 - ky), y1 = std::min(h, h + 1 - ky);
          const int x0 = std::max(0, 1 - kx), x1 = std::min(w, w + 1 - kx);
          for (int y = y0; y < y1; ++y) {
            T* dst = dxp + static_cast<std::size_t>(y + ky - 1) * w + (x0 + kx - 1);
            const T* src = row + static_cast<std::size_t>(y) * w + x0;
            for (int i = 0; i < x1 - x0; ++i) dst[i] += src[i];
          }
        }
      }
    }
  }
};

template <typename T>
void relu_inplace(Tensor<T>& x) {
  for (T& v : x.v) v = v > T(0) ? v : T(0);
}

// dx = dy where the activation output was positive.
template <typename T>
void relu_backward_inplace(Tensor<T>& dy, const Tensor<T>& y) {
  for (std::size_t i = 0; i < dy.v.size(); ++i)
    if (y.v[i] <= T(0)) dy.v[i] = T(0);
}

struct PoolCtx {
  std::vector<std::int32_t> argmax;  // per output cell: offset in the input plane
  int h = 0, w = 0;
};

template <typename T>
Tensor<T> maxpool2_forward(const Tensor<T>& x, PoolCtx& ctx) {
  if (x.h % 2 || x.w % 2) throw InvalidInputError("maxpool: odd input size");
  const int oh = x.h / 2, ow = x.w / 2;
  Tensor<T> y(x.c, oh, ow);
  ctx.h = x.h;
  ctx.w = x.w;
  ctx.argmax.resize(static_cast<std::size_t>(x.c) * oh * ow);
  for (int ci = 0; ci < x.c; ++ci) {
    const T* xp = x.plane(ci);
    T* yp = y.plane(ci);
    std::int32_t* am = ctx.argmax.data() + static_cast<std::size_t>(ci) * oh * ow;
    for (int y0 = 0; y0 < oh; ++y0) {
      for (int x0 = 0; x0 < ow; ++x0) {
        const int base = 2 * y0 * x.w + 2 * x0;
        int best = base;
        T bv = xp[base];
        const int cands[3] = {base + 1, base + x.w, base + x.w + 1};
        for (int cand : cands)
          if (xp[cand] > bv) {
            bv = xp[cand];
            best = cand;
          }
        yp[y0 * ow + x0] = bv;
        am[y0 * ow + x0] = best;
      }
    }
  }
  return y;
}

template <typename T>
Tensor<T> maxpool2_backward(const Tensor<T>& dy, const PoolCtx& ctx) {
  Tensor<T> dx(dy.c, ctx.h, ctx.w);
  const std::size_t ohw = dy.plane_size();
  for (int ci = 0; ci < dy.c; ++ci) {
    const T* dyp = dy.plane(ci);
    T* dxp = dx.plane(ci);
    const std::int32_t* am = ctx.argmax.data() + static_cast<std::size_t>(ci) * ohw;
    for (std::size_t i = 0; i < ohw; ++i) dxp[am[i]] += dyp[i];
  }
  return dx;
}

template <typename T>
Tensor<T> upsample2_forward(const Tensor<T>& x) {
  Tensor<T> y(x.c, x.h * 2, x.w * 2);
  for (int ci = 0; ci < x.c; ++ci) {
    const T* xp = x.plane(ci);
    T* yp = y.plane(ci);
    for (int yy = 0; yy < y.h; ++yy) {
      const T* src = xp + static_cast<std::size_t>(yy / 2) * x.w;
      T* dst = yp + static_cast<std::size_t>(yy) * y.w;
      for (int xx = 0; xx < y.w; ++xx) dst[xx] = src[xx / 2];
    }
  }
  return y;
}

template <typename T>
Tensor<T> upsample2_backward(const Tensor<T>& dy) {
  Tensor<T> dx(dy.c, dy.h / 2, dy.w / 2);
  for (int ci = 0; ci < dy.c; ++ci) {
    const T* dyp = dy.plane(ci);
    T* dxp = dx.plane(ci);
    for (int yy = 0; yy < dy.h; ++yy) {
      T* dst = dxp + static_cast<std::size_t>(yy / 2) * dx.w;
      const T* src = dyp + static_cast<std::size_t>(yy) * dy.w;
      for (int xx = 0; xx < dy.w; ++xx) dst[xx / 2] += src[xx];
    }
  }
  return dx;
}

}  // namespace floodsight
