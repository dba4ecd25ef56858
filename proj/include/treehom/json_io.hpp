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

// JSON encodings shared by the command-line tool and the game server. Nodes
// are always referred to by label. Every top-level document carries
// "v": kJsonVersion.

#ifndef TREEHOM_JSON_IO_HPP_
#define TREEHOM_JSON_IO_HPP_

#include <json.hpp>

#include "treehom/decision.hpp"
#include "treehom/family_strategy.hpp"
#include "treehom/game.hpp"
#include "treehom/structure.hpp"
#include "treehom/tripleu.hpp"
#include "treehom/universal.hpp"

namespace treehom {

using Json = nlohmann::json;

inline constexpr int kJsonVersion = 1;

// {"nodes": [...], "lt": [[a, b], ...], "inc": [...]}
Json structure_to_json(const ConstraintStructure& s);
// Throws ParseError on malformed documents or unknown labels.
ConstraintStructure structure_from_json(const Json& j);

Json subset_to_json(const ConstraintStructure& s, const NodeSubset& b);
// Throws ParseError for non-string entries, IllegalMove for unknown labels.
NodeSubset subset_from_json(const ConstraintStructure& s, const Json& j);

Json fixpoint_to_json(const ConstraintStructure& s, const FixpointResult& r);
Json level_sets_to_json(const ConstraintStructure& s, const LevelSets& l);
Json witness_to_json(const ConstraintStructure& s, const Witness& w);
Json embedding_to_json(const ConstraintStructure& s, const EmbeddingResult& e);

// Inventory of triple-u components with chain lengths and named-node labels.
Json family_summary(const Family& f);

Side side_from_string(const std::string& text);

// Spoiler moves: {"type": "element", "side", "node"}, {"type": "set", "side",
// "nodes"}, {"type": "bound", "side", "l"}, {"type": "boundedSet", "nodes"}.
// Duplicator moves: "dupElement", "dupSet", "boundReply" {"m"},
// "boundedDupSet". `before` is the position the move is played in; it fixes
// which structure the labels refer to.
Json move_to_json(const GamePosition& before, const Move& mv);
// Throws ParseError for a malformed document and IllegalMove for labels that
// do not exist in the structure the move refers to.
Move move_from_json(const GamePosition& before, const Json& j);

Json phase_to_json(const GamePosition& p);
Json position_to_json(const GamePosition& p);
Json verdict_to_json(const FinalVerdict& v);
Json pairing_to_json(const FamilyGame& g, const LocalPairing& pairing);

}  // namespace treehom

#endif  // TREEHOM_JSON_IO_HPP_
