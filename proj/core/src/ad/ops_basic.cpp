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

#include <cmath>
#include <vector>

#include "graspforge/ad/ops.hpp"
#include "graspforge/errors.hpp"

namespace graspforge::ad {

namespace {

template <typename T, typename Fwd, typename Deriv>
Tensor<T> unary(const Tensor<T>& input, Fwd fwd, Deriv deriv_from_output) {
  const auto x = input.data();
  std::vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = fwd(x[i]);
  Tensor<T> in_t = input;
  return Tensor<T>::make_result(input.shape(), std::move(out), {input},
                                [in_t, deriv_from_output](Node<T>& self) {
                                  Node<T>& xn = *in_t.node();
                                  for (std::size_t i = 0; i < self.grad.size(); ++i) {
                                    xn.grad[i] += self.grad[i] * deriv_from_output(xn.data[i], self.data[i]);
                                  }
                                });
}

template <typename T>
void require_same_shape(const Tensor<T>& a, const Tensor<T>& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shapes " + to_string(a.shape()) + " and " + to_string(b.shape()) +
                     " differ");
  }
}

}  // namespace

template <typename T>
Tensor<T> relu(const Tensor<T>& input) {
  return unary(
      input, [](T x) { return x > T(0) ? x : T(0); }, [](T x, T) { return x > T(0) ? T(1) : T(0); });
}

template <typename T>
Tensor<T> sigmoid(const Tensor<T>& input) {
  return unary(
      input,
      [](T x) {
        if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
        const T e = std::exp(x);
        return e / (T(1) + e);
      },
      [](T, T y) { return y * (T(1) - y); });
}

template <typename T>
Tensor<T> tanh(const Tensor<T>& input) {
  return unary(
      input, [](T x) { return std::tanh(x); }, [](T, T y) { return T(1) - y * y; });
}

template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b) {
  require_same_shape(a, b, "add");
  const auto x = a.data();
  const auto y = b.data();
  std::vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  Tensor<T> a_t = a, b_t = b;
  return Tensor<T>::make_result(a.shape(), std::move(out), {a, b}, [a_t, b_t](Node<T>& self) {
    for (const Tensor<T>* t : {&a_t, &b_t}) {
      Node<T>& n = *t->node();
      if (!n.requires_grad) continue;
      for (std::size_t i = 0; i < self.grad.size(); ++i) n.grad[i] += self.grad[i];
    }
  });
}

template <typename T>
Tensor<T> scale(const Tensor<T>& a, T factor) {
  return unary(
      a, [factor](T x) { return x * factor; }, [factor](T, T) { return factor; });
}

template <typename T>
Tensor<T> sum(const Tensor<T>& a) {
  T total(0);
  for (T v : a.data()) total += v;
  Tensor<T> a_t = a;
  return Tensor<T>::make_result({1}, {total}, {a}, [a_t](Node<T>& self) {
    Node<T>& n = *a_t.node();
    for (auto& g : n.grad) g += self.grad[0];
  });
}

template <typename T>
Tensor<T> dropout(const Tensor<T>& input, T rate, Mode mode, std::mt19937_64& rng) {
  if (rate < T(0) || rate >= T(1)) throw InvalidArgument("dropout rate must lie in [0, 1)");
  if (mode == Mode::kEval || rate == T(0)) return input;
  const T keep_scale = T(1) / (T(1) - rate);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto x = input.data();
  std::vector<T> mask(x.size());
  std::vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mask[i] = uniform(rng) < static_cast<double>(rate) ? T(0) : keep_scale;
    out[i] = x[i] * mask[i];
  }
  Tensor<T> in_t = input;
  return Tensor<T>::make_result(input.shape(), std::move(out), {input},
                                [in_t, mask = std::move(mask)](Node<T>& self) {
                                  Node<T>& n = *in_t.node();
                                  for (std::size_t i = 0; i < self.grad.size(); ++i) n.grad[i] += self.grad[i] * mask[i];
                                });
}

template <typename T>
Tensor<T> smooth_l1(const Tensor<T>& prediction, const Tensor<T>& target) {
  require_same_shape(prediction, target, "smooth_l1");
  const auto p = prediction.data();
  const auto t = target.data();
  const std::size_t n = p.size();
  if (n == 0) throw ShapeError("smooth_l1 on an empty tensor");
  T total(0);
  for (std::size_t i = 0; i < n; ++i) {
    const T d = p[i] - t[i];
    const T ad = std::abs(d);
    total += ad < T(1) ? T(0.5) * d * d : ad - T(0.5);
  }
  Tensor<T> p_t = prediction, t_t = target;
  return Tensor<T>::make_result({1}, {total / static_cast<T>(n)}, {prediction},
                                [p_t, t_t, n](Node<T>& self) {
                                  Node<T>& pn = *p_t.node();
                                  const auto tv = t_t.data();
                                  const T g = self.grad[0] / static_cast<T>(n);
                                  for (std::size_t i = 0; i < n; ++i) {
                                    const T d = pn.data[i] - tv[i];
                                    const T slope = std::abs(d) < T(1) ? d : (d > T(0) ? T(1) : T(-1));
                                    pn.grad[i] += g * slope;
                                  }
                                });
}

template <typename T>
Tensor<T> smooth_l1(const Tensor<T>& prediction, const Tensor<T>& target, const Tensor<T>& weights) {
  require_same_shape(prediction, target, "smooth_l1");
  require_same_shape(prediction, weights, "smooth_l1");
  const auto p = prediction.data();
  const auto t = target.data();
  const auto w = weights.data();
  T total(0), norm(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const T d = p[i] - t[i];
    const T ad = std::abs(d);
    total += w[i] * (ad < T(1) ? T(0.5) * d * d : ad - T(0.5));
    norm += w[i];
  }
  if (!(norm > T(0))) throw InvalidArgument("smooth_l1 weights must have a positive sum");
  Tensor<T> p_t = prediction, t_t = target, w_t = weights;
  return Tensor<T>::make_result({1}, {total / norm}, {prediction}, [p_t, t_t, w_t, norm](Node<T>& self) {
    Node<T>& pn = *p_t.node();
    const auto tv = t_t.data();
    const auto wv = w_t.data();
    const T g = self.grad[0] / norm;
    for (std::size_t i = 0; i < pn.data.size(); ++i) {
      const T d = pn.data[i] - tv[i];
      const T slope = std::abs(d) < T(1) ? d : (d > T(0) ? T(1) : T(-1));
      pn.grad[i] += g * wv[i] * slope;
    }
  });
}

template <typename T>
T inner(const Tensor<T>& a, const Tensor<T>& b) {
  require_same_shape(a, b, "inner");
  T acc(0);
  const auto x = a.data();
  const auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

template <typename T>
Tensor<T> batch_norm2d(const Tensor<T>& input, const Tensor<T>& gamma, const Tensor<T>& beta,
                       RunningStats<T>& stats, Mode mode, T momentum, T epsilon) {
  if (!input.defined() || input.rank() != 4) throw ShapeError("batch_norm2d expects a BCHW tensor");
  if (!(epsilon > T(0))) throw InvalidArgument("batch_norm2d epsilon must be positive");
  const int batch = input.dim(0), channels = input.dim(1);
  const std::size_t plane = static_cast<std::size_t>(input.dim(2)) * input.dim(3);
  if (gamma.numel() != static_cast<std::size_t>(channels) || beta.numel() != static_cast<std::size_t>(channels) ||
      stats.mean.size() != static_cast<std::size_t>(channels) || stats.var.size() != static_cast<std::size_t>(channels)) {
    throw ShapeError("batch_norm2d parameters do not match " + std::to_string(channels) + " channels of input " +
                     to_string(input.shape()));
  }
  const std::size_t count = static_cast<std::size_t>(batch) * plane;
  if (mode == Mode::kTrain && count <= 1) {
    throw InvalidArgument("batch_norm2d in train mode needs more than one value per channel, input " +
                          to_string(input.shape()));
  }

  const auto x = input.data();
  const auto g = gamma.data();
  const auto b = beta.data();
  std::vector<T> out(x.size());
  std::vector<T> inv_std(static_cast<std::size_t>(channels));
  std::vector<T> normalized(mode == Mode::kTrain ? x.size() : 0);

  for (int c = 0; c < channels; ++c) {
    T mean, var;
    if (mode == Mode::kTrain) {
      T acc(0);
      for (int n = 0; n < batch; ++n) {
        const T* p = x.data() + (static_cast<std::size_t>(n) * channels + c) * plane;
        for (std::size_t i = 0; i < plane; ++i) acc += p[i];
      }
      mean = acc / static_cast<T>(count);
      T sq(0);
      for (int n = 0; n < batch; ++n) {
        const T* p = x.data() + (static_cast<std::size_t>(n) * channels + c) * plane;
        for (std::size_t i = 0; i < plane; ++i) sq += (p[i] - mean) * (p[i] - mean);
      }
      var = sq / static_cast<T>(count);
      const T unbiased = sq / static_cast<T>(count - 1);
      stats.mean[c] = (T(1) - momentum) * stats.mean[c] + momentum * mean;
      stats.var[c] = (T(1) - momentum) * stats.var[c] + momentum * unbiased;
    } else {
      mean = stats.mean[c];
      var = stats.var[c];
    }
    const T istd = T(1) / std::sqrt(var + epsilon);
    inv_std[c] = istd;
    for (int n = 0; n < batch; ++n) {
      const std::size_t off = (static_cast<std::size_t>(n) * channels + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        const T xhat = (x[off + i] - mean) * istd;
        if (mode == Mode::kTrain) normalized[off + i] = xhat;
        out[off + i] = xhat * g[c] + b[c];
      }
    }
  }

  Tensor<T> x_t = input, g_t = gamma, b_t = beta;
  if (mode == Mode::kEval) {
    return Tensor<T>::make_result(
        input.shape(), std::move(out), {input, gamma, beta},
        [x_t, g_t, b_t, inv_std, mean = stats.mean, batch, channels, plane](Node<T>& self) {
          Node<T>& xn = *x_t.node();
          Node<T>& gn = *g_t.node();
          Node<T>& bn = *b_t.node();
          for (int c = 0; c < channels; ++c) {
            T dg(0), db(0);
            for (int n = 0; n < batch; ++n) {
              const std::size_t off = (static_cast<std::size_t>(n) * channels + c) * plane;
              for (std::size_t i = 0; i < plane; ++i) {
                const T dy = self.grad[off + i];
                db += dy;
                dg += dy * (xn.data[off + i] - mean[c]) * inv_std[c];
                if (xn.requires_grad) xn.grad[off + i] += dy * gn.data[c] * inv_std[c];
              }
            }
            if (gn.requires_grad) gn.grad[c] += dg;
            if (bn.requires_grad) bn.grad[c] += db;
          }
        });
  }
  return Tensor<T>::make_result(
      input.shape(), std::move(out), {input, gamma, beta},
      [x_t, g_t, b_t, inv_std, normalized = std::move(normalized), batch, channels, plane,
       count](Node<T>& self) {
        Node<T>& xn = *x_t.node();
        Node<T>& gn = *g_t.node();
        Node<T>& bn = *b_t.node();
        for (int c = 0; c < channels; ++c) {
          T sum_dy(0), sum_dy_xhat(0);
          for (int n = 0; n < batch; ++n) {
            const std::size_t off = (static_cast<std::size_t>(n) * channels + c) * plane;
            for (std::size_t i = 0; i < plane; ++i) {
              sum_dy += self.grad[off + i];
              sum_dy_xhat += self.grad[off + i] * normalized[off + i];
            }
          }
          if (gn.requires_grad) gn.grad[c] += sum_dy_xhat;
          if (bn.requires_grad) bn.grad[c] += sum_dy;
          if (!xn.requires_grad) continue;
          const T k = gn.data[c] * inv_std[c] / static_cast<T>(count);
          for (int n = 0; n < batch; ++n) {
            const std::size_t off = (static_cast<std::size_t>(n) * channels + c) * plane;
            for (std::size_t i = 0; i < plane; ++i) {
              xn.grad[off + i] += k * (static_cast<T>(count) * self.grad[off + i] - sum_dy -
                                       normalized[off + i] * sum_dy_xhat);
            }
          }
        }
      });
}

#define GRASPFORGE_INSTANTIATE(T)                                                                     \
  template Tensor<T> relu(const Tensor<T>&);                                                          \
  template Tensor<T> sigmoid(const Tensor<T>&);                                                       \
  template Tensor<T> tanh(const Tensor<T>&);                                                          \
  template Tensor<T> add(const Tensor<T>&, const Tensor<T>&);                                         \
  template Tensor<T> scale(const Tensor<T>&, T);                                                      \
  template Tensor<T> sum(const Tensor<T>&);                                                           \
  template Tensor<T> dropout(const Tensor<T>&, T, Mode, std::mt19937_64&);                            \
  template Tensor<T> smooth_l1(const Tensor<T>&, const Tensor<T>&);                                   \
  template Tensor<T> smooth_l1(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&);                 \
  template T inner(const Tensor<T>&, const Tensor<T>&);                                               \
  template Tensor<T> batch_norm2d(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&, RunningStats<T>&, \
                                  Mode, T, T);

GRASPFORGE_INSTANTIATE(float)
GRASPFORGE_INSTANTIATE(double)

#undef GRASPFORGE_INSTANTIATE

}  // namespace graspforge::ad
