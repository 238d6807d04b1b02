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
#include <string>
#include <utility>
#include <vector>

#include "twofactor/graph.hpp"
#include "twofactor/laurent.hpp"

namespace twofactor {

enum class Resolution { kOpen, kCross };

// The four strands around a matching edge e = (u, v). With e_u the half-edge
// of e at u: a = next_ccw(e_u), b = next_ccw(a); likewise c, d at v.
struct LocalStrands {
  HalfEdgeId eu, ev;
  HalfEdgeId a, b, c, d;
};

/// Throws InvalidInput if e is not a non-loop matching edge.
LocalStrands local_strands(const MatchedDiagram& diagram, EdgeId e);

using StrandPair = std::pair<HalfEdgeId, HalfEdgeId>;
/// open: {a-d, b-c}; cross: {a-c, b-d}.
std::array<StrandPair, 2> resolution_pairing(const MatchedDiagram& diagram, EdgeId e,
                                             Resolution choice);

// One bit per matching edge, matching edges taken in ascending id order.
// Bit i set means edge i takes the cross resolution.
struct ResolutionState {
  std::uint64_t bits = 0;
  unsigned width = 0;

  unsigned crosses() const noexcept;
  bool cross(unsigned i) const noexcept { return (bits >> i) & 1u; }
  /// Character i is bit i.
  std::string to_string() const;
  friend bool operator==(const ResolutionState&, const ResolutionState&) = default;
};

// Strand-level view of a diagram, the only thing the state sum needs.
// Strands are the non-matching half-edges, densely renumbered. Each strand
// belongs to exactly one edge pair and exactly one resolution site.
struct StrandModel {
  struct Site {
    EdgeId edge;
    /// a, b, c, d in the sense of LocalStrands.
    std::array<std::uint32_t, 4> strands;
  };
  std::vector<std::uint32_t> edge_partner;
  std::vector<Site> sites;
  std::uint32_t free_circles = 0;

  /// Circles produced by resolving every site according to `bits`.
  unsigned circle_count(std::uint64_t bits) const;
};

StrandModel compile_strands(const MatchedDiagram& diagram);

struct BracketOptions {
  /// Refuse state sums over more matching edges than this.
  unsigned max_matching_edges = 30;
  /// Worker threads for the state sum; 0 picks hardware concurrency.
  unsigned threads = 1;
};

unsigned circle_count(const MatchedDiagram& diagram, const ResolutionState& state);

/// Sum over all states of (-z)^crosses (z + z^-1)^circles.
LaurentPoly bracket_state_sum(const MatchedDiagram& diagram, const BracketOptions& options = {});
LaurentPoly bracket_state_sum(const StrandModel& model, const BracketOptions& options = {});

/// Product of per-component state sums times (z + z^-1)^free_circles.
LaurentPoly bracket_factored(const MatchedDiagram& diagram, const BracketOptions& options = {});

/// (-z)^crosses (z + z^-1)^circles.
LaurentPoly state_term(unsigned crosses, unsigned circles);

struct CubeOfResolutions {
  struct State {
    ResolutionState state;
    unsigned crosses = 0;
    unsigned circles = 0;
    LaurentPoly term;
  };
  std::vector<EdgeId> matching_order;
  /// Ascending bit-vector order.
  std::vector<State> states;
  /// (from, to) state bits; to = from with one more cross.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> arrows;

  LaurentPoly total() const;
};

CubeOfResolutions cube(const MatchedDiagram& diagram, const BracketOptions& options = {});

enum class CubeFormat { kDot, kJson };
std::string export_cube(const CubeOfResolutions& cube, CubeFormat format);

}  // namespace twofactor
