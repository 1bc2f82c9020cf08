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

#include "graspforge/ad/optim.hpp"

#include <cmath>

#include "graspforge/errors.hpp"

namespace graspforge::ad {

template <typename T>
Parameter<T>::Parameter(std::string param_name, Tensor<T> value)
    : name(std::move(param_name)),
      tensor(std::move(value)),
      first_moment(tensor.numel(), T(0)),
      second_moment(tensor.numel(), T(0)) {
  tensor.set_requires_grad(true);
}

template <typename T>
void adam_step(std::span<Parameter<T>* const> params, const AdamOptions& options) {
  for (const Parameter<T>* p : params) {
    if (!p->tensor.has_grad()) throw InvalidArgument("parameter '" + p->name + "' has no gradient");
  }
  const T lr = static_cast<T>(options.learning_rate);
  const T b1 = static_cast<T>(options.beta1);
  const T b2 = static_cast<T>(options.beta2);
  const T eps = static_cast<T>(options.epsilon);
  for (Parameter<T>* p : params) {
    p->step += 1;
    const T correction1 = T(1) - static_cast<T>(std::pow(options.beta1, static_cast<double>(p->step)));
    const T correction2 = T(1) - static_cast<T>(std::pow(options.beta2, static_cast<double>(p->step)));
    auto w = p->tensor.data();
    const auto g = p->tensor.grad();
    for (std::size_t i = 0; i < w.size(); ++i) {
      p->first_moment[i] = b1 * p->first_moment[i] + (T(1) - b1) * g[i];
      p->second_moment[i] = b2 * p->second_moment[i] + (T(1) - b2) * g[i] * g[i];
      const T m_hat = p->first_moment[i] / correction1;
      const T v_hat = p->second_moment[i] / correction2;
      w[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

template <typename T>
void zero_grad(std::span<Parameter<T>* const> params) {
  for (Parameter<T>* p : params) p->tensor.zero_grad();
}

template struct Parameter<float>;
template struct Parameter<double>;
template void adam_step(std::span<Parameter<float>* const>, const AdamOptions&);
template void adam_step(std::span<Parameter<double>* const>, const AdamOptions&);
template void zero_grad(std::span<Parameter<float>* const>);
template void zero_grad(std::span<Parameter<double>* const>);

}  // namespace graspforge::ad
