// SPDX-License-Identifier: Apache-2.0
//
// rtris: ray-traced channel simulator for reconfigurable intelligent surfaces
// Copyright (C) 2026 The rtris Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>

namespace rtris {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scene file could not be read, parsed, or violates a geometric invariant.
class SceneError : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration is malformed or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (frequency outside a
/// material's validity range, non-positive distance, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometry encountered while following a ray or path.
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace rtris
