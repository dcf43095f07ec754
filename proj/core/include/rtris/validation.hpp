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

// Built-in oracle suite behind `rtris validate`: the simulator against
// closed-form free-space, two-ray and RIS cascade references.

#include <string>
#include <vector>

namespace rtris {

struct OracleCheck {
  std::string name;
  bool pass = false;
  double deviation = 0.0;  // worst measured deviation
  double tolerance = 0.0;
  std::string unit;
  std::string detail;
};

struct ValidationOptions {
  int threads = 0;
  // Fault injection: the simulated side runs with lambda * (1 + lambda_error)
  // while the references keep the nominal wavelength.
  double lambda_error = 0.0;
};

std::vector<OracleCheck> run_builtin_oracles(const ValidationOptions& opts = {});

/// Indices of samples at least `margin_db` above the nearest null of `y_db`,
/// where a null is a local minimum and its neighbourhood extends while the
/// curve stays within margin_db of it.
std::vector<std::size_t> samples_clear_of_nulls(const std::vector<double>& y_db, double margin_db);

}  // namespace rtris
