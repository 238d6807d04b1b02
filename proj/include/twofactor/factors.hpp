// Copyright 2026 The twofactor Authors.
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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "twofactor/bracket.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/laurent.hpp"

namespace twofactor {

/// Edge set of a 2-factor containing the matching.
using TwoFactor = std::set<EdgeId>;
using PerfectMatching = std::set<EdgeId>;

struct FactorLimits {
  /// two_factor_enumerate refuses diagrams with more non-matching edges.
  unsigned max_enumeration_edges = 24;
  /// enumerate_perfect_matchings stops with LimitExceeded past this many.
  std::size_t max_matchings = 1u << 20;
};

/// 0 when some complement cycle is odd, else 2^(cycles + free circles).
BigInt two_factor_count_formula(const MatchedDiagram& d);

/// Brute force over subsets of the non-matching edges.
std::vector<TwoFactor> two_factor_enumerate(const MatchedDiagram& d, const FactorLimits& limits = {});

/// Every perfect matching of the underlying graph; existing flags ignored.
std::vector<PerfectMatching> enumerate_perfect_matchings(const MatchedDiagram& d,
                                                         const FactorLimits& limits = {});

/// Sum of brackets over every perfect matching. Connected input only.
LaurentPoly tait_polynomial(const MatchedDiagram& d, const BracketOptions& options = {},
                            const FactorLimits& limits = {});

/// Colour per edge, indexed like d.edges(); colours are 0, 1, 2.
using EdgeColoring = std::vector<std::uint8_t>;

/// Calls `visit` on every proper 3-edge-colouring (labelled: colour
/// permutations count separately).
void for_each_tait_coloring(const MatchedDiagram& d,
                            const std::function<void(const EdgeColoring&)>& visit);
BigInt tait_colorings_count(const MatchedDiagram& d);

nlohmann::json edge_sets_to_json(const std::vector<std::set<EdgeId>>& sets);

}  // namespace twofactor
