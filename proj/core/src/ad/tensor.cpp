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

#include "graspforge/ad/tensor.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "graspforge/errors.hpp"

namespace graspforge::ad {

namespace {
thread_local bool g_grad_enabled = true;
}  // namespace

std::size_t numel(const Shape& shape) {
  std::size_t n = 1;
  for (int extent : shape) {
    if (extent < 0) throw ShapeError("negative extent in shape " + to_string(shape));
    n *= static_cast<std::size_t>(extent);
  }
  return n;
}

std::string to_string(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << 'x';
    out << shape[i];
  }
  out << ']';
  return out.str();
}

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }
bool grad_mode_enabled() { return g_grad_enabled; }

template <typename T>
Tensor<T> Tensor<T>::from(Shape shape, std::vector<T> values, bool requires_grad) {
  if (ad::numel(shape) != values.size()) {
    throw ShapeError("shape " + to_string(shape) + " holds " + std::to_string(ad::numel(shape)) +
                     " elements but " + std::to_string(values.size()) + " values were given");
  }
  auto node = std::make_shared<Node<T>>();
  node->shape = std::move(shape);
  node->data = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

template <typename T>
Tensor<T> Tensor<T>::make_result(Shape shape, std::vector<T> values,
                                 std::initializer_list<Tensor> parents, BackwardFn backward) {
  Tensor out = from(std::move(shape), std::move(values));
  if (!g_grad_enabled) return out;
  bool needs = false;
  for (const Tensor& p : parents) needs = needs || (p.defined() && p.requires_grad());
  if (!needs) return out;
  out.node_->requires_grad = true;
  for (const Tensor& p : parents) {
    if (p.defined()) out.node_->parents.push_back(p.node_);
  }
  out.node_->backward_fn = std::move(backward);
  return out;
}

template <typename T>
T Tensor<T>::item() const {
  if (numel() != 1) throw ShapeError("item() on tensor of shape " + to_string(shape()));
  return node_->data[0];
}

template <typename T>
void Tensor<T>::set_grad(std::vector<T> grad) {
  if (grad.size() != numel()) {
    throw ShapeError("gradient size " + std::to_string(grad.size()) + " does not match shape " +
                     to_string(shape()));
  }
  node_->grad = std::move(grad);
}

template <typename T>
void Tensor<T>::backward() {
  if (numel() != 1) {
    throw ShapeError("backward() without a seed needs a scalar, got shape " + to_string(shape()));
  }
  const T one(1);
  backward(std::span<const T>(&one, 1));
}

template <typename T>
void Tensor<T>::backward(std::span<const T> seed) {
  if (seed.size() != numel()) throw ShapeError("backward seed size mismatch for " + to_string(shape()));
  if (!requires_grad()) return;

  // Post-order DFS gives a topological order; walk it in reverse.
  std::vector<Node<T>*> order;
  std::unordered_set<Node<T>*> visited;
  std::vector<std::pair<Node<T>*, std::size_t>> stack{{node_.get(), 0}};
  visited.insert(node_.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node<T>* parent = node->parents[next++].get();
      if (parent->requires_grad && visited.insert(parent).second) stack.push_back({parent, 0});
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  node_->ensure_grad();
  for (std::size_t i = 0; i < seed.size(); ++i) node_->grad[i] += seed[i];
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node<T>* node = *it;
    if (node->backward_fn && !node->grad.empty()) {
      for (auto& parent : node->parents) {
        if (parent->requires_grad) parent->ensure_grad();
      }
      node->backward_fn(*node);
    }
  }
}

template <typename T>
Tensor<T> Tensor<T>::detach() const {
  return from(shape(), node_->data, false);
}

template class Tensor<float>;
template class Tensor<double>;

}  // namespace graspforge::ad
