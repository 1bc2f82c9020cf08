// Copyright 2026 The Grasp Forge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <Eigen/Core>
#include <algorithm>
#include <vector>

#include "graspforge/ad/ops.hpp"
#include "graspforge/errors.hpp"
#include "graspforge/util/parallel.hpp"

namespace graspforge::ad {

namespace {

// Upper bound on the unrolled patch buffer; larger problems are tiled by rows.
constexpr std::size_t kMaxColElements = std::size_t{1} << 22;

template <typename T>
using RowMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using Map = Eigen::Map<RowMat<T>>;
template <typename T>
using ConstMap = Eigen::Map<const RowMat<T>>;
template <typename T>
using StridedMap = Eigen::Map<RowMat<T>, 0, Eigen::OuterStride<>>;
template <typename T>
using ConstStridedMap = Eigen::Map<const RowMat<T>, 0, Eigen::OuterStride<>>;

// Sliding-window layout shared by conv2d and conv_transpose2d. `image` is the
// strided side (conv input / transposed-conv output); the grid (grid_h x
// grid_w) enumerates window positions.
struct Window {
  int channels;
  int height;
  int width;
  int kernel;
  int stride;
  int pad;
  int grid_h;
  int grid_w;

  std::size_t patch() const { return static_cast<std::size_t>(channels) * kernel * kernel; }
  int rows_per_tile() const {
    const std::size_t per_row = patch() * static_cast<std::size_t>(grid_w);
    return static_cast<int>(std::clamp<std::size_t>(kMaxColElements / std::max<std::size_t>(per_row, 1), 1,
                                                    static_cast<std::size_t>(grid_h)));
  }
};

// col[(c*K + ki)*K + kj][(r - row0)*grid_w + g] = image[c][r*stride - pad + ki][g*stride - pad + kj]
template <typename T>
void im2col(const T* image, const Window& w, int row0, int row1, T* col) {
  const std::size_t ncols = static_cast<std::size_t>(row1 - row0) * w.grid_w;
  for (int c = 0; c < w.channels; ++c) {
    for (int ki = 0; ki < w.kernel; ++ki) {
      for (int kj = 0; kj < w.kernel; ++kj) {
        T* dst = col + ((static_cast<std::size_t>(c) * w.kernel + ki) * w.kernel + kj) * ncols;
        for (int r = row0; r < row1; ++r) {
          T* out = dst + static_cast<std::size_t>(r - row0) * w.grid_w;
          const int y = r * w.stride - w.pad + ki;
          if (y < 0 || y >= w.height) {
            std::fill(out, out + w.grid_w, T(0));
            continue;
          }
          const T* src = image + (static_cast<std::size_t>(c) * w.height + y) * w.width;
          for (int g = 0; g < w.grid_w; ++g) {
            const int x = g * w.stride - w.pad + kj;
            out[g] = (x >= 0 && x < w.width) ? src[x] : T(0);
          }
        }
      }
    }
  }
}

// Adjoint of im2col: scatter-adds patches back into the image.
template <typename T>
void col2im(const T* col, const Window& w, int row0, int row1, T* image) {
  const std::size_t ncols = static_cast<std::size_t>(row1 - row0) * w.grid_w;
  for (int c = 0; c < w.channels; ++c) {
    for (int ki = 0; ki < w.kernel; ++ki) {
      for (int kj = 0; kj < w.kernel; ++kj) {
        const T* src = col + ((static_cast<std::size_t>(c) * w.kernel + ki) * w.kernel + kj) * ncols;
        for (int r = row0; r < row1; ++r) {
          const int y = r * w.stride - w.pad + ki;
          if (y < 0 || y >= w.height) continue;
          const T* in = src + static_cast<std::size_t>(r - row0) * w.grid_w;
          T* dst = image + (static_cast<std::size_t>(c) * w.height + y) * w.width;
          for (int g = 0; g < w.grid_w; ++g) {
            const int x = g * w.stride - w.pad + kj;
            if (x >= 0 && x < w.width) dst[x] += in[g];
          }
        }
      }
    }
  }
}

template <typename T>
void check_rank4(const Tensor<T>& t, const char* what) {
  if (!t.defined() || t.rank() != 4) {
    throw ShapeError(std::string(what) + " must be a rank-4 tensor, got " +
                     (t.defined() ? to_string(t.shape()) : std::string("undefined")));
  }
}

template <typename T>
void check_bias(const Tensor<T>& bias, int channels, const Tensor<T>& weight) {
  if (bias.defined() && bias.numel() != static_cast<std::size_t>(channels)) {
    throw ShapeError("bias shape " + to_string(bias.shape()) + " does not match weight shape " +
                     to_string(weight.shape()));
  }
}

template <typename T>
void add_bias(std::vector<T>& out, const Tensor<T>& bias, int batch, int channels, std::size_t plane) {
  if (!bias.defined()) return;
  const auto b = bias.data();
  for (int n = 0; n < batch; ++n) {
    for (int c = 0; c < channels; ++c) {
      T* p = out.data() + (static_cast<std::size_t>(n) * channels + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) p[i] += b[c];
    }
  }
}

template <typename T>
void bias_backward(const std::vector<T>& dy, Node<T>& bias, int batch, int channels, std::size_t plane) {
  for (int n = 0; n < batch; ++n) {
    for (int c = 0; c < channels; ++c) {
      const T* p = dy.data() + (static_cast<std::size_t>(n) * channels + c) * plane;
      T acc(0);
      for (std::size_t i = 0; i < plane; ++i) acc += p[i];
      bias.grad[c] += acc;
    }
  }
}

}  // namespace

template <typename T>
Tensor<T> conv2d(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias, int stride,
                 int padding) {
  check_rank4(input, "conv2d input");
  check_rank4(weight, "conv2d weight");
  if (stride < 1 || padding < 0) throw InvalidArgument("conv2d needs stride >= 1 and padding >= 0");
  const int batch = input.dim(0), in_c = input.dim(1), h = input.dim(2), w = input.dim(3);
  const int out_c = weight.dim(0), k = weight.dim(2);
  if (weight.dim(1) != in_c || weight.dim(3) != k) {
    throw ShapeError("conv2d input " + to_string(input.shape()) + " incompatible with weight " +
                     to_string(weight.shape()));
  }
  check_bias(bias, out_c, weight);
  if (h + 2 * padding < k || w + 2 * padding < k) {
    throw ShapeError("conv2d kernel of weight " + to_string(weight.shape()) +
                     " does not fit padded input " + to_string(input.shape()) + " (zero-extent output)");
  }
  const Window win{in_c, h, w, k, stride, padding, (h + 2 * padding - k) / stride + 1,
                   (w + 2 * padding - k) / stride + 1};
  const std::size_t in_plane = static_cast<std::size_t>(in_c) * h * w;
  const std::size_t out_plane = static_cast<std::size_t>(win.grid_h) * win.grid_w;
  const int tile = win.rows_per_tile();

  std::vector<T> out(static_cast<std::size_t>(batch) * out_c * out_plane);
  const ConstMap<T> wmat(weight.data().data(), out_c, static_cast<Eigen::Index>(win.patch()));
  util::parallel_for(0, static_cast<std::size_t>(batch), [&](std::size_t n) {
    std::vector<T> col(win.patch() * static_cast<std::size_t>(tile) * win.grid_w);
    const T* x = input.data().data() + n * in_plane;
    T* y = out.data() + n * out_c * out_plane;
    for (int r0 = 0; r0 < win.grid_h; r0 += tile) {
      const int r1 = std::min(win.grid_h, r0 + tile);
      const Eigen::Index cols = static_cast<Eigen::Index>(r1 - r0) * win.grid_w;
      im2col(x, win, r0, r1, col.data());
      const ConstMap<T> colm(col.data(), static_cast<Eigen::Index>(win.patch()), cols);
      StridedMap<T> ym(y + static_cast<std::size_t>(r0) * win.grid_w, out_c, cols,
                       Eigen::OuterStride<>(static_cast<Eigen::Index>(out_plane)));
      ym.noalias() = wmat * colm;
    }
  });
  add_bias(out, bias, batch, out_c, out_plane);

  Tensor<T> in_t = input, w_t = weight, b_t = bias;
  return Tensor<T>::make_result(
      {batch, out_c, win.grid_h, win.grid_w}, std::move(out), {input, weight, bias},
      [in_t, w_t, b_t, win, batch, out_c, in_plane, out_plane, tile](Node<T>& self) {
        const Node<T>& xn = *in_t.node();
        Node<T>& wn = *w_t.node();
        if (b_t.defined() && b_t.requires_grad()) bias_backward(self.grad, *b_t.node(), batch, out_c, out_plane);
        const bool need_w = wn.requires_grad;
        const bool need_x = xn.requires_grad;
        if (!need_w && !need_x) return;
        const auto patch = static_cast<Eigen::Index>(win.patch());
        const ConstMap<T> wmat(wn.data.data(), out_c, patch);
        std::vector<T> col(win.patch() * static_cast<std::size_t>(tile) * win.grid_w);
        std::vector<T> dcol(need_x ? col.size() : 0);
        for (int n = 0; n < batch; ++n) {
          const T* x = xn.data.data() + n * in_plane;
          const T* dy = self.grad.data() + n * out_c * out_plane;
          for (int r0 = 0; r0 < win.grid_h; r0 += tile) {
            const int r1 = std::min(win.grid_h, r0 + tile);
            const Eigen::Index cols = static_cast<Eigen::Index>(r1 - r0) * win.grid_w;
            const ConstStridedMap<T> dym(dy + static_cast<std::size_t>(r0) * win.grid_w, out_c, cols,
                                         Eigen::OuterStride<>(static_cast<Eigen::Index>(out_plane)));
            if (need_w) {
              im2col(x, win, r0, r1, col.data());
              const ConstMap<T> colm(col.data(), patch, cols);
              Map<T> dw(wn.grad.data(), out_c, patch);
              dw.noalias() += dym * colm.transpose();
            }
            if (need_x) {
              Map<T> dcolm(dcol.data(), patch, cols);
              dcolm.noalias() = wmat.transpose() * dym;
              col2im(dcol.data(), win, r0, r1, in_t.node()->grad.data() + n * in_plane);
            }
          }
        }
      });
}

template <typename T>
Tensor<T> conv_transpose2d(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias,
                           int stride, int padding, int output_padding) {
  check_rank4(input, "conv_transpose2d input");
  check_rank4(weight, "conv_transpose2d weight");
  if (stride < 1 || padding < 0) throw InvalidArgument("conv_transpose2d needs stride >= 1 and padding >= 0");
  if (output_padding < 0 || output_padding >= stride) {
    throw InvalidArgument("conv_transpose2d output_padding must lie in [0, stride), got " +
                          std::to_string(output_padding) + " with stride " + std::to_string(stride));
  }
  const int batch = input.dim(0), in_c = input.dim(1), h = input.dim(2), w = input.dim(3);
  const int out_c = weight.dim(1), k = weight.dim(2);
  if (weight.dim(0) != in_c || weight.dim(3) != k) {
    throw ShapeError("conv_transpose2d input " + to_string(input.shape()) + " incompatible with weight " +
                     to_string(weight.shape()));
  }
  check_bias(bias, out_c, weight);
  const int out_h = (h - 1) * stride - 2 * padding + k + output_padding;
  const int out_w = (w - 1) * stride - 2 * padding + k + output_padding;
  if (out_h <= 0 || out_w <= 0) {
    throw ShapeError("conv_transpose2d of input " + to_string(input.shape()) + " with weight " +
                     to_string(weight.shape()) + " has zero-extent output");
  }
  // Window over the output image; the grid is the input's spatial extent.
  const Window win{out_c, out_h, out_w, k, stride, padding, h, w};
  const std::size_t in_plane = static_cast<std::size_t>(h) * w;
  const std::size_t out_plane = static_cast<std::size_t>(out_h) * out_w;
  const int tile = win.rows_per_tile();
  const auto patch = static_cast<Eigen::Index>(win.patch());

  std::vector<T> out(static_cast<std::size_t>(batch) * out_c * out_plane, T(0));
  const ConstMap<T> wmat(weight.data().data(), in_c, patch);
  util::parallel_for(0, static_cast<std::size_t>(batch), [&](std::size_t n) {
    std::vector<T> col(win.patch() * static_cast<std::size_t>(tile) * w);
    const T* x = input.data().data() + n * in_c * in_plane;
    T* y = out.data() + n * out_c * out_plane;
    for (int r0 = 0; r0 < h; r0 += tile) {
      const int r1 = std::min(h, r0 + tile);
      const Eigen::Index cols = static_cast<Eigen::Index>(r1 - r0) * w;
      const ConstStridedMap<T> xm(x + static_cast<std::size_t>(r0) * w, in_c, cols,
                                  Eigen::OuterStride<>(static_cast<Eigen::Index>(in_plane)));
      Map<T> colm(col.data(), patch, cols);
      colm.noalias() = wmat.transpose() * xm;
      col2im(col.data(), win, r0, r1, y);
    }
  });
  add_bias(out, bias, batch, out_c, out_plane);

  Tensor<T> in_t = input, w_t = weight, b_t = bias;
  return Tensor<T>::make_result(
      {batch, out_c, out_h, out_w}, std::move(out), {input, weight, bias},
      [in_t, w_t, b_t, win, batch, in_c, out_c, h, w, in_plane, out_plane, tile, patch](Node<T>& self) {
        const Node<T>& xn = *in_t.node();
        Node<T>& wn = *w_t.node();
        if (b_t.defined() && b_t.requires_grad()) bias_backward(self.grad, *b_t.node(), batch, out_c, out_plane);
        const bool need_w = wn.requires_grad;
        const bool need_x = xn.requires_grad;
        if (!need_w && !need_x) return;
        const ConstMap<T> wmat(wn.data.data(), in_c, patch);
        std::vector<T> col(win.patch() * static_cast<std::size_t>(tile) * w);
        for (int n = 0; n < batch; ++n) {
          const T* x = xn.data.data() + n * in_c * in_plane;
          const T* dy = self.grad.data() + n * out_c * out_plane;
          for (int r0 = 0; r0 < h; r0 += tile) {
            const int r1 = std::min(h, r0 + tile);
            const Eigen::Index cols = static_cast<Eigen::Index>(r1 - r0) * w;
            im2col(dy, win, r0, r1, col.data());
            const ConstMap<T> colm(col.data(), patch, cols);
            if (need_w) {
              const ConstStridedMap<T> xm(x + static_cast<std::size_t>(r0) * w, in_c, cols,
                                          Eigen::OuterStride<>(static_cast<Eigen::Index>(in_plane)));
              Map<T> dw(wn.grad.data(), in_c, patch);
              dw.noalias() += xm * colm.transpose();
            }
            if (need_x) {
              StridedMap<T> dx(in_t.node()->grad.data() + n * in_c * in_plane + static_cast<std::size_t>(r0) * w,
                               in_c, cols, Eigen::OuterStride<>(static_cast<Eigen::Index>(in_plane)));
              dx.noalias() += wmat * colm;
            }
          }
        }
      });
}

template Tensor<float> conv2d(const Tensor<float>&, const Tensor<float>&, const Tensor<float>&, int, int);
template Tensor<double> conv2d(const Tensor<double>&, const Tensor<double>&, const Tensor<double>&, int, int);
template Tensor<float> conv_transpose2d(const Tensor<float>&, const Tensor<float>&, const Tensor<float>&, int,
                                        int, int);
template Tensor<double> conv_transpose2d(const Tensor<double>&, const Tensor<double>&, const Tensor<double>&,
                                         int, int, int);

}  // namespace graspforge::ad
