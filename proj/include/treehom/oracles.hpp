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

// Brute-force searches that share no code with the fixpoint. They exist to
// cross-check the decision procedures on small inputs.

#ifndef TREEHOM_ORACLES_HPP_
#define TREEHOM_ORACLES_HPP_

#include <cstddef>
#include <optional>

#include "treehom/structure.hpp"

namespace treehom {

inline constexpr std::size_t kExtensionOracleLimit = 7;
inline constexpr std::size_t kTreeOracleNodeLimit = 8;
inline constexpr std::size_t kTreeOracleHeightLimit = 3;

// Searches for a semi-linear strict order on the same nodes that contains
// every lt-edge and keeps every inc-pair incomparable. The result is returned
// as a structure whose lt is the order and whose inc is its full
// incomparability relation. Throws SizeLimitExceeded above 7 nodes.
std::optional<ConstraintStructure> extension_oracle(const ConstraintStructure& s);

// Backtracking search for a homomorphism into the complete `branching`-ary
// tree of height `height`. Throws SizeLimitExceeded above 8 nodes or height 3.
bool brute_force_tree_hom_oracle(const ConstraintStructure& s, std::size_t height, std::size_t branching);

}  // namespace treehom

#endif  // TREEHOM_ORACLES_HPP_
