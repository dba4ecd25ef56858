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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `--skip-sweep` leaves out the duplicator sweep.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "treehom/decision.hpp"
#include "treehom/oracles.hpp"
#include "treehom/random.hpp"
#include "treehom/solver.hpp"
#include "treehom/structure.hpp"
#include "treehom/sweep.hpp"
#include "treehom/tripleu.hpp"
#include "treehom/universal.hpp"

namespace treehom {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& criterion) {
  Outcome o;
  try {
    o = criterion();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-32s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

// Structures accepted in earlier criteria, reused for witness soundness.
std::vector<ConstraintStructure> accepted;
// The n <= 10 random sweep, reused for height monotonicity.
std::vector<ConstraintStructure> wide_sweep;

struct ReferenceInstance {
  const char* name;
  ConstraintStructure s;
  bool expected;
};

std::vector<ReferenceInstance> reference_instances() {
  return {{"lt cycle", lt_cycle(), false},
          {"incomparable triple-u", incomparable_tripleu(), false},
          {"plain triple-u", gen_tripleu({0, 0}).structure, true},
          {"(5,3)-triple-u", gen_tripleu({5, 3}).structure, true}};
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  Rng rng(1001);
  std::size_t agree = 0;
  const std::size_t total = 1000;
  for (std::size_t i = 0; i < total; ++i) {
    const double lt = 0.04 + 0.04 * static_cast<double>(i % 6);
    const double inc = 0.03 * static_cast<double>((i / 6) % 5);
    auto s = random_structure(1 + rng() % 10, lt, inc, rng);
    const bool fast = fixpoint_levels(s).exhausted;
    if (fast == subset_criterion_oracle(s)) ++agree;
    if (fast) accepted.push_back(s);
    wide_sweep.push_back(std::move(s));
  }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << agree << "/" << total << " agree, " << accepted.size() << " accepted, " << secs << " s";
  return {agree == total && secs < 60, d.str()};
}

Outcome reference_verdicts() {
  std::size_t right = 0, total = 0;
  std::ostringstream d;
  for (auto& p : reference_instances()) {
    const bool verdicts[] = {decide_semilinear(p.s), decide_ordinal_tree(p.s), decide_tree(p.s)};
    for (bool v : verdicts) {
      ++total;
      if (v == p.expected) ++right;
    }
    d << p.name << (p.expected ? " accepted" : " rejected") << "; ";
    if (p.expected) accepted.push_back(p.s);
  }
  d << right << "/" << total << " verdicts as expected";
  return {right == total, d.str()};
}

Outcome witness_soundness() {
  std::size_t ok = 0;
  for (const auto& s : accepted) {
    auto w = build_witness(s);
    if (verify_homomorphism(s, w.tree, w.mapping)) ++ok;
  }
  std::ostringstream d;
  d << ok << "/" << accepted.size() << " witnesses verify";
  return {ok == accepted.size() && !accepted.empty(), d.str()};
}

Outcome height_oracle() {
  Rng rng(1754);
  std::size_t agree = 0, total = 0;
  for (int i = 0; i < 300; ++i) {
    auto s = random_structure(1 + rng() % 5, 0.05 + 0.05 * (i % 4), 0.04 * (i % 5), rng);
    for (std::size_t h = 0; h <= 2; ++h) {
      ++total;
      if (decide_tree_height(s, h) == brute_force_tree_hom_oracle(s, h, s.size())) ++agree;
    }
  }
  std::size_t monotone = 0;
  for (const auto& s : wide_sweep) {
    bool ok = true, prev = false;
    for (std::size_t h = 0; h <= s.size() + 1; ++h) {
      const bool now = decide_tree_height(s, h);
      if (prev && !now) ok = false;
      prev = now;
    }
    if (prev != decide_tree(s)) ok = false;
    if (ok) ++monotone;
  }
  std::ostringstream d;
  d << agree << "/" << total << " agree with tree search; monotone on " << monotone << "/" << wide_sweep.size();
  return {agree == total && monotone == wide_sweep.size(), d.str()};
}

Outcome extension_oracle_agreement() {
  Rng rng(1755);
  std::size_t agree = 0;
  for (int i = 0; i < 300; ++i) {
    auto s = random_structure(1 + rng() % 5, 0.1 + 0.05 * (i % 4), 0.05 * (i % 5), rng);
    if (decide_semilinear(s) == extension_oracle(s).has_value()) ++agree;
  }
  std::ostringstream d;
  d << agree << "/300 agree";
  return {agree == 300, d.str()};
}

Outcome universal_embedding() {
  const auto start = Clock::now();
  Rng rng(1756);
  std::size_t verified = 0, dyadic_ok = 0;
  for (int i = 0; i < 500; ++i) {
    auto s = random_semilinear_order(1 + rng() % 8, rng);
    auto e = embed_universal(s);
    if (verify_universal_embedding(s, e)) ++verified;
    bool within = true;
    for (const auto& word : e.closed_phi)
      for (const auto& letter : word)
        if (static_cast<std::size_t>(letter.value.exponent()) > e.dyadic_depth_bound) within = false;
    if (within) ++dyadic_ok;
  }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << verified << "/500 verify, " << dyadic_ok << "/500 within exponent bound, " << secs << " s";
  return {verified == 500 && dyadic_ok == 500 && secs < 120, d.str()};
}

Outcome family_separation() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t t : {1, 2}) {
    std::vector<std::size_t> e_stages, u_stages;
    for (std::size_t s : {3, 5, 7, 9}) {
      auto e = gen_family({FamilyKind::E, {2, s}, t}).structure;
      auto u = gen_family({FamilyKind::U, {2, s}, t}).structure;
      if (!decide_tree(e) || !decide_tree(u)) ok = false;
      e_stages.push_back(placement_stage(e, "d"));
      u_stages.push_back(placement_stage(u, "d"));
    }
    for (std::size_t i = 1; i < e_stages.size(); ++i) {
      if (e_stages[i] != e_stages[0]) ok = false;
      if (u_stages[i] <= u_stages[i - 1]) ok = false;
    }
    d << "t=" << t << " E:";
    for (auto x : e_stages) d << " " << x;
    d << " U:";
    for (auto x : u_stages) d << " " << x;
    d << "; ";
  }
  return {ok, d.str()};
}

Outcome game_engine() {
  std::size_t self_ok = 0, self_total = 0;
  for (const auto& entry : std::filesystem::directory_iterator(TREEHOM_CORPUS)) {
    auto s = load_structure(entry.path().string());
    if (s.size() > 6) continue;
    for (std::size_t k = 0; k <= 2; ++k) {
      ++self_total;
      if (solve_game(s, s, k).winner == Player::kDuplicator) ++self_ok;
    }
  }
  const bool chains = solve_game(chain_structure(1), chain_structure(2), 2).winner == Player::kSpoiler;
  std::ostringstream d;
  d << self_ok << "/" << self_total << " self-games won by duplicator; chains (1,2) at k=2: "
    << (chains ? "spoiler" : "duplicator");
  return {self_ok == self_total && self_total > 0 && chains, d.str()};
}

Outcome duplicator_sweep() {
  SweepConfig config;
  config.rounds = 2;
  config.sizes = find_equivalent_chain_lengths(2, 6);
  config.multiplicity = 2;
  auto r = adversarial_sweep(config);
  std::ostringstream d;
  d << r.playouts << " playouts, " << r.duplicator_losses << " losses, " << r.check_failures << " check failures, "
    << r.positions_checked << " positions checked, " << r.unpaired_playouts << " via truncation fallback, "
    << r.seconds << " s";
  for (const auto& f : r.failures) d << "\n      " << f;
  return {r.clean() && r.seconds < 1800, d.str()};
}

}  // namespace
}  // namespace treehom

int main(int argc, char** argv) {
  using namespace treehom;
  bool skip_sweep = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--skip-sweep") == 0) skip_sweep = true;

  report("oracle equivalence", oracle_equivalence);
  report("reference instances", reference_verdicts);
  report("witness soundness", witness_soundness);
  report("height oracle agreement", height_oracle);
  report("extension oracle agreement", extension_oracle_agreement);
  report("universal embedding", universal_embedding);
  report("family separation shadow", family_separation);
  report("game engine", game_engine);
  if (skip_sweep)
    std::printf("SKIP  %-32s\n", "duplicator strategy soundness");
  else
    report("duplicator strategy soundness", duplicator_sweep);
  return failures == 0 ? 0 : 1;
}
