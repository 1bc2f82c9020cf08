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

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace graspforge::ad {

/// Tensor extents, outermost first. Image tensors are (batch, channels, height, width).
using Shape = std::vector<int>;

std::size_t numel(const Shape& shape);
std::string to_string(const Shape& shape);

enum class Mode { kTrain, kEval };

/// Disables graph recording on the current thread while alive.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool grad_mode_enabled();

template <typename T>
struct Node {
  Shape shape;
  std::vector<T> data;
  // Empty until a backward pass (or set_grad) populates it.
  std::vector<T> grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this node's grad and accumulates into the parents' grads.
  std::function<void(Node&)> backward_fn;

  void ensure_grad() {
    if (grad.empty()) grad.assign(data.size(), T(0));
  }
};

/// Dense row-major array with optional reverse-mode gradient tracking.
///
/// A Tensor is a shared handle: copies alias the same storage. Values produced
/// by an op are not modified afterwards; leaves (parameters, inputs) may be
/// written through data() by their owner.
template <typename T>
class Tensor {
 public:
  using Scalar = T;
  using NodePtr = std::shared_ptr<Node<T>>;
  using BackwardFn = std::function<void(Node<T>&)>;

  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false) {
    return full(std::move(shape), T(0), requires_grad);
  }

  static Tensor full(Shape shape, T value, bool requires_grad = false) {
    auto node = std::make_shared<Node<T>>();
    node->data.assign(ad::numel(shape), value);
    node->shape = std::move(shape);
    node->requires_grad = requires_grad;
    return Tensor(std::move(node));
  }

  static Tensor from(Shape shape, std::vector<T> values, bool requires_grad = false);

  /// Builds an op result. Records the graph edge only when grad mode is on and
  /// at least one parent requires a gradient.
  static Tensor make_result(Shape shape, std::vector<T> values,
                            std::initializer_list<Tensor> parents, BackwardFn backward);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  int dim(std::size_t axis) const { return node_->shape.at(axis); }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t numel() const { return node_->data.size(); }

  std::span<T> data() { return node_->data; }
  std::span<const T> data() const { return node_->data; }
  T item() const;

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool value) { node_->requires_grad = value; }

  bool has_grad() const { return !node_->grad.empty(); }
  std::span<const T> grad() const { return node_->grad; }
  std::span<T> mutable_grad() { return node_->grad; }
  void set_grad(std::vector<T> grad);
  /// Drops the gradient; has_grad() is false afterwards.
  void zero_grad() { node_->grad.clear(); }

  /// Back-propagates from this scalar, accumulating into every reachable
  /// tensor that requires a gradient.
  void backward();
  /// Back-propagates with an explicit seed gradient of this tensor's shape.
  void backward(std::span<const T> seed);

  /// Copy of the values as a new leaf without history.
  Tensor detach() const;

  const NodePtr& node() const { return node_; }

 private:
  explicit Tensor(NodePtr node) : node_(std::move(node)) {}
  NodePtr node_;
};

extern template class Tensor<float>;
extern template class Tensor<double>;

}  // namespace graspforge::ad
