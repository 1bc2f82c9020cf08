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

#include "graspforge/geometry/transforms.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "graspforge/errors.hpp"

namespace graspforge::geometry {

namespace {

double rotate_heading(const Eigen::Matrix3d& rotation, double theta) {
  const Eigen::Vector3d d = rotation * Eigen::Vector3d(std::cos(theta), std::sin(theta), 0.0);
  return normalize_angle(std::atan2(d.y(), d.x()));
}

}  // namespace

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw InvalidArgument("camera focal lengths must be positive");
  if (!(depth_scale > 0.0)) throw InvalidArgument("depth_scale must be positive");
}

void HandEyeTransform::validate() const {
  const double ortho = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (!(ortho <= 1e-9) || !(std::abs(rotation.determinant() - 1.0) <= 1e-9) || !translation.allFinite()) {
    throw InvalidArgument("hand-eye rotation is not a proper rotation matrix");
  }
}

HandEyeTransform HandEyeTransform::inverse() const {
  HandEyeTransform inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation);
  return inv;
}

HandEyeTransform HandEyeTransform::compose(const HandEyeTransform& other) const {
  HandEyeTransform out;
  out.rotation = rotation * other.rotation;
  out.translation = rotation * other.translation + translation;
  return out;
}

CameraGrasp image_to_camera(const PixelGrasp& grasp, double depth_m, const CameraIntrinsics& k) {
  k.validate();
  if (!(depth_m > 0.0) || !std::isfinite(depth_m)) {
    throw InvalidArgument("invalid depth " + std::to_string(depth_m) + " at pixel (" + std::to_string(grasp.x) +
                          ", " + std::to_string(grasp.y) + ")");
  }
  CameraGrasp out;
  out.position = {(grasp.x - k.cx) * depth_m / k.fx, (grasp.y - k.cy) * depth_m / k.fy, depth_m};
  out.theta = grasp.theta;
  out.width = grasp.width * depth_m / k.fx;
  out.quality = grasp.quality;
  return out;
}

CameraGrasp image_to_camera(const PixelGrasp& grasp, const ImageF& depth, const CameraIntrinsics& k) {
  const int px = static_cast<int>(std::lround(grasp.x));
  const int py = static_cast<int>(std::lround(grasp.y));
  if (!depth.contains(px, py)) {
    throw InvalidArgument("grasp pixel (" + std::to_string(px) + ", " + std::to_string(py) +
                          ") lies outside the depth image");
  }
  return image_to_camera(grasp, static_cast<double>(depth.at(px, py)) * k.depth_scale, k);
}

RobotGrasp camera_to_robot(const CameraGrasp& grasp, const HandEyeTransform& t) {
  t.validate();
  RobotGrasp out;
  out.position = t.apply(grasp.position);
  out.theta = rotate_heading(t.rotation, grasp.theta);
  out.width = grasp.width;
  out.quality = grasp.quality;
  return out;
}

RobotGrasp image_to_robot(const PixelGrasp& grasp, const ImageF& depth, const CameraIntrinsics& k,
                          const HandEyeTransform& t) {
  return camera_to_robot(image_to_camera(grasp, depth, k), t);
}

CameraGrasp robot_to_camera(const RobotGrasp& grasp, const HandEyeTransform& t) {
  const HandEyeTransform inv = t.inverse();
  CameraGrasp out;
  out.position = inv.apply(grasp.position);
  out.theta = rotate_heading(inv.rotation, grasp.theta);
  out.width = grasp.width;
  out.quality = grasp.quality;
  return out;
}

Point2 project(const Eigen::Vector3d& p, const CameraIntrinsics& k) {
  if (!(p.z() > 0.0)) throw InvalidArgument("cannot project a point at or behind the camera");
  return {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy};
}

PixelGrasp camera_to_image(const CameraGrasp& grasp, const CameraIntrinsics& k) {
  const Point2 px = project(grasp.position, k);
  return {px.x, px.y, grasp.theta, grasp.width * k.fx / grasp.position.z(), grasp.quality};
}

}  // namespace graspforge::geometry
