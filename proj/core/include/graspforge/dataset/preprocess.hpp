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

#include <span>
#include <vector>

#include "graspforge/ad/tensor.hpp"
#include "graspforge/dataset/sample.hpp"

namespace graspforge::dataset {

/// Fills holes (0 or NaN) by repeated sweeps in which every hole with at
/// least one valid 8-neighbour takes the mean of those neighbours, as valid
/// before the sweep. Throws DataError when no pixel is valid.
ImageF inpaint_depth(const ImageF& depth);

bool is_depth_hole(float value);

/// Square center crop followed by a resize, as a map from source pixel
/// coordinates to output pixel coordinates.
struct CropResize {
  int x0 = 0;
  int y0 = 0;
  int side = 0;
  int out_size = 0;

  static CropResize center(int width, int height, int out_size);
  double scale() const { return static_cast<double>(out_size) / side; }
  geometry::Point2 apply(geometry::Point2 p) const;
  geometry::GraspRectangle apply(const geometry::GraspRectangle& r) const;
  bool identity() const { return x0 == 0 && y0 == 0 && side == out_size; }
};

/// Whether every corner lies inside [-0.5, size - 0.5] on both axes.
bool rectangle_in_bounds(const geometry::GraspRectangle& r, int width, int height);

/// Center crop to a square, bilinear resize to out_size, depth inpainted.
/// Rectangles follow the same map; those leaving the frame are dropped.
Sample crop_resize(const Sample& sample, int out_size);

/// Network input planes in [depth, r, g, b] order (subset per modality),
/// C x S x S. Depth is mean-centered and clipped to [-1, 1]; colour channels
/// are scaled to [0, 1] and mean-centered per channel. Throws
/// ConfigMismatchError when the sample lacks a channel the modality needs.
std::vector<float> input_planes(const Sample& sample, Modality modality);

/// Stacks input planes of equally sized samples into a B x C x S x S tensor.
ad::Tensor<float> make_batch(std::span<const Sample* const> samples, Modality modality);

struct Preprocessed {
  Sample sample;
  ad::Tensor<float> input;  // 1 x C x S x S
};

Preprocessed preprocess(const Sample& sample, int out_size, Modality modality);

}  // namespace graspforge::dataset
