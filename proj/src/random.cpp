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

#include "treehom/random.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace treehom {

namespace {

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return labels;
}

}  // namespace

ConstraintStructure random_structure(std::size_t n, double lt_density, double inc_density, Rng& rng) {
  std::bernoulli_distribution lt_coin(lt_density), inc_coin(inc_density);
  std::vector<Edge> lt, inc;
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = 0; b < n; ++b) {
      if (lt_coin(rng)) lt.emplace_back(a, b);
      if (inc_coin(rng)) inc.emplace_back(a, b);
    }
  return ConstraintStructure(numbered_labels(n), std::move(lt), std::move(inc));
}

ConstraintStructure random_semilinear_order(std::size_t n, Rng& rng) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n, kNone);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::size_t p = pick(rng);
    parent[i] = p == i ? kNone : p;
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = parent[i]; a != kNone; a = parent[a]) below[a][i] = true;

  std::vector<Edge> lt, inc;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (below[a][b]) lt.emplace_back(perm[a], perm[b]);
      else if (a != b && !below[b][a]) inc.emplace_back(perm[a], perm[b]);
    }
  return ConstraintStructure(numbered_labels(n), std::move(lt), std::move(inc));
}

}  // namespace treehom
