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

#include <Eigen/Core>

#include "graspforge/geometry/grasp.hpp"
#include "graspforge/image.hpp"

namespace graspforge::geometry {

struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  double depth_scale = 1.0;  // meters per depth unit

  void validate() const;
};

/// Rigid transform taking camera-frame points to the robot frame.
struct HandEyeTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  /// Throws InvalidArgument unless rotation is orthonormal with det +1 (1e-9).
  void validate() const;
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }
  HandEyeTransform inverse() const;
  /// (this ∘ other)(p) = this(other(p)).
  HandEyeTransform compose(const HandEyeTransform& other) const;
};

/// Grasp in the camera frame (meters). Orientation is measured in the image
/// plane, like PixelGrasp::theta.
struct CameraGrasp {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double theta = 0.0;
  double width = 0.0;  // meters
  double quality = 0.0;
};

/// Tool pose in the robot frame: tip position, rotation about the robot z
/// axis, opening in meters.
struct RobotGrasp {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double theta = 0.0;
  double width = 0.0;
  double quality = 0.0;
};

/// Back-projects through the pinhole model using the depth at the grasp's
/// nearest pixel. Throws InvalidArgument when that depth is missing or <= 0.
CameraGrasp image_to_camera(const PixelGrasp& grasp, const ImageF& depth, const CameraIntrinsics& intrinsics);

/// Back-projection with an explicit depth (meters).
CameraGrasp image_to_camera(const PixelGrasp& grasp, double depth_m, const CameraIntrinsics& intrinsics);

RobotGrasp camera_to_robot(const CameraGrasp& grasp, const HandEyeTransform& camera_to_robot);

RobotGrasp image_to_robot(const PixelGrasp& grasp, const ImageF& depth, const CameraIntrinsics& intrinsics,
                          const HandEyeTransform& camera_to_robot);

CameraGrasp robot_to_camera(const RobotGrasp& grasp, const HandEyeTransform& camera_to_robot);

Point2 project(const Eigen::Vector3d& point, const CameraIntrinsics& intrinsics);

/// Exact pinhole projection of a camera-frame grasp back to pixels.
PixelGrasp camera_to_image(const CameraGrasp& grasp, const CameraIntrinsics& intrinsics);

}  // namespace graspforge::geometry
