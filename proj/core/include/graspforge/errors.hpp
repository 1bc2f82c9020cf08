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

#include <stdexcept>
#include <string>

namespace graspforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible with the requested operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A value became NaN/Inf where finite values are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Dataset files are missing, unreadable or malformed.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Checkpoint or blob container failed validation.
class CheckpointError : public Error {
 public:
  using Error::Error;
};

/// Checkpoint format version is not one this build understands.
class VersionMismatchError : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};

/// Two configurations that must agree do not (e.g. checkpoint modality vs. input).
class ConfigMismatchError : public Error {
 public:
  using Error::Error;
};

/// Point sets too degenerate (e.g. collinear) to determine a transform.
class DegenerateGeometryError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A robot target outside the reachable workspace.
class OutOfWorkspaceError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace graspforge
