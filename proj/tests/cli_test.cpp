// Copyright 2026 The Treehom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the treehom binary as a subprocess over the corpus.

#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string command = std::string(TREEHOM_CLI) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string corpus(const std::string& name) { return std::string(TREEHOM_CORPUS) + "/" + name; }

TEST(CliTest, CycleIsRejectedWithStalledComponent) {
  auto r = run("check " + corpus("fig1-cycle.cg"));
  EXPECT_EQ(r.exit_code, 1) << r.out;
  EXPECT_NE(r.out.find("{a,b,c}"), std::string::npos) << r.out;
}

TEST(CliTest, WitnessAndEmbedVerify) {
  auto w = run("witness " + corpus("plain-tripleu.cg"));
  EXPECT_EQ(w.exit_code, 0) << w.out;
  EXPECT_NE(w.out.find("verified: yes"), std::string::npos);
  auto e = run("embed " + corpus("chain3.cg"));
  EXPECT_EQ(e.exit_code, 0) << e.out;
  EXPECT_NE(e.out.find("verified: yes"), std::string::npos);
}

TEST(CliTest, CheckAgreesWithOracleOnCorpus) {
  for (const char* mode : {"ordinal-tree", "tree"}) {
    for (const auto& entry : std::filesystem::directory_iterator(TREEHOM_CORPUS)) {
      const std::string path = entry.path().string();
      auto fast = run(std::string("check --mode ") + mode + " " + path);
      auto slow = run(std::string("oracle-check --mode ") + mode + " " + path);
      ASSERT_TRUE(fast.exit_code == 0 || fast.exit_code == 1) << path << "\n" << fast.out;
      if (slow.exit_code == 3) continue;
      EXPECT_EQ(fast.exit_code, slow.exit_code) << mode << " " << path;
    }
  }
}

TEST(CliTest, JsonOutputParses) {
  auto r = run("--json check " + corpus("fig1-cycle.cg"));
  EXPECT_EQ(r.exit_code, 1);
  auto j = nlohmann::json::parse(r.out, nullptr, false);
  ASSERT_FALSE(j.is_discarded()) << r.out;
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["result"], false);
  EXPECT_EQ(j["fixpoint"]["stalledComponent"], nlohmann::json({"a", "b", "c"}));

  auto chains = run("--json game chains --k 2 --maxlen 6");
  EXPECT_EQ(chains.exit_code, 0);
  auto c = nlohmann::json::parse(chains.out, nullptr, false);
  ASSERT_FALSE(c.is_discarded()) << chains.out;
}

TEST(CliTest, GeneratedStructureRoundTrips) {
  auto gen = run("gen tripleu --n 2 --m 1");
  ASSERT_EQ(gen.exit_code, 0) << gen.out;
  const auto path = std::filesystem::temp_directory_path() / "treehom_cli_test_tripleu.cg";
  std::ofstream(path) << gen.out;
  auto w = run("witness " + path.string());
  EXPECT_EQ(w.exit_code, 0) << w.out;
  std::filesystem::remove(path);
}

TEST(CliTest, ExitCodesForUsageAndLimits) {
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("bogus").exit_code, 2);
  EXPECT_EQ(run("check /nonexistent/file.cg").exit_code, 2);
  EXPECT_EQ(run("oracle-check --mode semilinear " + corpus("family-e-0-1.cg")).exit_code, 3);
}

TEST(CliTest, GameSubcommands) {
  auto solve = run("game solve --k 2 " + corpus("chain3.cg") + " " + corpus("chain3.cg"));
  EXPECT_EQ(solve.exit_code, 0) << solve.out;
  EXPECT_NE(solve.out.find("winner: duplicator"), std::string::npos);
  auto chains = run("game chains --k 2 --maxlen 6");
  EXPECT_NE(chains.out.find("5 6"), std::string::npos) << chains.out;
  auto play = run("game selfplay --k 2 --sizes 5 6 --mult 2 --playouts 20 --seed 7");
  EXPECT_EQ(play.exit_code, 0) << play.out;
}

}  // namespace
