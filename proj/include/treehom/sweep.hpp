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

// Adversarial playouts of spoiler against FamilyGame's duplicator.
//
// Spoiler's set moves range over the components already touched plus
// representatives of up to two fresh components (the lowest-index fresh
// component of each shape, and two of the same shape when available):
//   * before the last round, every subset of one component whose chain part
//     is empty, every chain subset of one component with the named part
//     empty or full, and the product of a coarse family (empty, whole,
//     named nodes, each chain, chain ends, l, r and unions of these) over
//     every two components in scope;
//   * in the last round, every membership pattern over the chosen nodes
//     combined with a coarse filler from one component or the whole scope;
//   * each of these with and without the final node.
// Bound moves use l = 1, the largest l whose reply can still be met inside
// the scope, and their midpoint, with spoiler's bounded set drawn from the
// coarse family (before the last round) or the last-round family, filtered
// by size. Element moves cover every node of both structures.

#ifndef TREEHOM_SWEEP_HPP_
#define TREEHOM_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "treehom/family_strategy.hpp"

namespace treehom {

struct SweepConfig {
  std::size_t rounds = 2;
  std::vector<std::size_t> sizes;
  std::size_t multiplicity = 2;
  // Stop recording details after this many failures.
  std::size_t max_failures_recorded = 10;
};

struct SweepReport {
  std::size_t playouts = 0;
  std::size_t duplicator_losses = 0;    // final check failed or duplicator had no reply
  std::size_t check_failures = 0;       // locally_winning_check failed at some position
  std::size_t positions_checked = 0;
  std::size_t unpaired_playouts = 0;  // playouts finished after the truncation ran out of partners
  std::size_t first_round_moves = 0;
  double seconds = 0;
  std::vector<std::string> failures;
  bool clean() const { return duplicator_losses == 0 && check_failures == 0; }
};

// Exhausts the move family described above.
SweepReport adversarial_sweep(const SweepConfig& config,
                              const std::function<void(std::size_t done, std::size_t total)>& progress = {});

// Random spoiler moves drawn from the same families; seed-controlled.
SweepReport random_playouts(const SweepConfig& config, std::size_t count, std::uint64_t seed);

}  // namespace treehom

#endif  // TREEHOM_SWEEP_HPP_
