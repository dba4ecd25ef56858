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

// Seeded generators for property tests and the CLI.

#ifndef TREEHOM_RANDOM_HPP_
#define TREEHOM_RANDOM_HPP_

#include <cstddef>
#include <random>

#include "treehom/structure.hpp"

namespace treehom {

using Rng = std::mt19937_64;

// Every ordered pair (self-loops included) independently becomes an lt-edge
// with probability lt_density and an inc-edge with probability inc_density.
// Labels are v0, v1, ...
ConstraintStructure random_structure(std::size_t n, double lt_density, double inc_density, Rng& rng);

// Random forest order: each node picks a random earlier node as parent or
// starts a new root, then the order is closed transitively and inc is set to
// the full incomparability relation. Node indices are shuffled afterwards so
// that index order is not a linear extension.
ConstraintStructure random_semilinear_order(std::size_t n, Rng& rng);

}  // namespace treehom

#endif  // TREEHOM_RANDOM_HPP_
