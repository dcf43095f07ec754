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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RTRIS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("rtris-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("frobnicate"), 1);
  EXPECT_EQ(run_cli("run --config scenario_b"), 1);
  EXPECT_EQ(run_cli("run --config scenario_b --out " + (dir_ / "o").string() + " --set bogus=1"), 1);
  EXPECT_EQ(run_cli("run --config no_such_preset --out " + (dir_ / "o").string()), 1);
  EXPECT_FALSE(fs::exists(dir_ / "o"));
}

TEST_F(Cli, MissingSceneExitsTwoWithoutOutputs) {
  EXPECT_EQ(run_cli("run --config scenario_b --set scene=/nonexistent/scene.json --out " + (dir_ / "o").string()), 2);
  EXPECT_FALSE(fs::exists(dir_ / "o" / "manifest.json"));
}

TEST_F(Cli, CoverageRejectsSweeps) {
  EXPECT_EQ(run_cli("coverage --config scenario_b --out " + (dir_ / "o").string()), 1);
}

TEST_F(Cli, RunWritesOutputsAndReplaysExactly) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run_cli("run --config scenario_b --set sweep.steps=4 --set random_trials=3 --set policy=random --seed 7 "
                    "--threads 2 --out " + a.string()),
            0);
  for (const char* f : {"sweep.csv", "ecdf.csv", "policy_samples.csv", "analysis.json", "config.resolved.json",
                        "manifest.json"})
    EXPECT_TRUE(fs::exists(a / f)) << f;
  const json resolved = json::parse(slurp(a / "config.resolved.json"));
  EXPECT_EQ(resolved["seed"], 7);
  EXPECT_EQ(resolved["policy"], "random");
  EXPECT_EQ(resolved["sweep"]["steps"], 4);
  const json manifest = json::parse(slurp(a / "manifest.json"));
  EXPECT_EQ(manifest["tool"], "rtris");
  EXPECT_EQ(manifest["command"], "run");
  EXPECT_EQ(manifest["threads"], 2);
  EXPECT_EQ(manifest["scene"]["fnv1a64"].get<std::string>().size(), 16u);
  EXPECT_EQ(manifest["outputs"].size(), 5u);

  ASSERT_EQ(run_cli("run --config " + (a / "config.resolved.json").string() + " --threads 1 --out " + b.string()), 0);
  for (const char* f : {"sweep.csv", "ecdf.csv", "policy_samples.csv", "analysis.json", "config.resolved.json"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  for (const auto& e : fs::directory_iterator(a)) EXPECT_NE(e.path().filename().string().front(), '.');
}

TEST_F(Cli, PathsToStdoutAndFile) {
  EXPECT_EQ(run_cli("paths --config two_ray_a --tx 0,0,5 --rx 15,0,1"), 0);
  ASSERT_EQ(run_cli("paths --config two_ray_a --tx 0,0,5 --rx 15,0,1 --out " + (dir_ / "p").string()), 0);
  const std::string csv = slurp(dir_ / "p" / "paths.csv");
  EXPECT_NE(csv.find("R:ground"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "p" / "manifest.json"));
  EXPECT_EQ(run_cli("paths --config two_ray_a --leg sideways --tx 0,0,5 --rx 15,0,1"), 1);
}

TEST_F(Cli, ValidateExitCodes) {
  EXPECT_EQ(run_cli("validate"), 0);
  EXPECT_EQ(run_cli("validate --inject-lambda-error 0.01"), 4);
}
