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

#include <gtest/gtest.h>

#include "rtris/validation.hpp"

using namespace rtris;

TEST(Validation, NullExclusionKeepsFarSamples) {
  std::vector<double> y;
  for (int i = 0; i < 100; ++i) y.push_back(i == 50 ? -40.0 : (i == 49 || i == 51 ? -20.0 : 0.0));
  const auto keep = samples_clear_of_nulls(y, 10.0);
  EXPECT_EQ(std::count(keep.begin(), keep.end(), 50u), 0);
  EXPECT_EQ(std::count(keep.begin(), keep.end(), 0u), 1);
  EXPECT_EQ(std::count(keep.begin(), keep.end(), 99u), 1);
}

TEST(Validation, BuiltinOraclesPass) {
  const auto checks = run_builtin_oracles();
  ASSERT_FALSE(checks.empty());
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << " deviation " << c.deviation << " " << c.detail;
}

TEST(Validation, InjectedWavelengthErrorIsCaught) {
  ValidationOptions o;
  o.lambda_error = 0.01;
  const auto checks = run_builtin_oracles(o);
  bool any_fail = false;
  for (const auto& c : checks) any_fail = any_fail || !c.pass;
  EXPECT_TRUE(any_fail);
}
