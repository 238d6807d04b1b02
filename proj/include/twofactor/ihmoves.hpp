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
#include <set>
#include <string>
#include <vector>

#include "twofactor/bracket.hpp"
#include "twofactor/graph.hpp"

namespace twofactor {

/// Result of one mechanical check. `triggered` is false when the check's
/// hypothesis does not apply (a vacuous pass). `detail` carries the computed
/// values either way.
struct CheckOutcome {
  bool passed = true;
  bool triggered = true;
  nlohmann::json detail = nlohmann::json::object();
};

enum class MoveKind { kIh, kSmoothVertical, kSmoothHorizontal, kBubbleCollapse };

struct MoveRecord {
  MoveKind kind = MoveKind::kIh;
  std::vector<EdgeId> edges;
  std::string result_name;
  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

const char* to_string(MoveKind kind);
nlohmann::json moves_to_json(const std::vector<MoveRecord>& moves);
std::vector<MoveRecord> moves_from_json(const nlohmann::json& j);

// IH-move on matching edge e = (u, v) with strands a, b, c, d (see
// LocalStrands): u and v are replaced by u' = (e_u, d, a) and v' = (e_v, b, c),
// still joined by e. Vertex, edge and half-edge ids are all reused, so the
// move can be repeated on the same edge id.
MatchedDiagram ih_move(const MatchedDiagram& d, EdgeId e);

enum class SmoothDirection { kVertical, kHorizontal };

// Deletes u, v and e, then joins the dangling strands: vertical pairs a-d and
// b-c, horizontal pairs a-b and c-d. Strands that meet become one edge (the
// smallest constituent id survives); strands that close up become free
// circles.
MatchedDiagram smooth(const MatchedDiagram& d, EdgeId e, SmoothDirection direction);
inline MatchedDiagram smooth_vertical(const MatchedDiagram& d, EdgeId e) {
  return smooth(d, e, SmoothDirection::kVertical);
}
inline MatchedDiagram smooth_horizontal(const MatchedDiagram& d, EdgeId e) {
  return smooth(d, e, SmoothDirection::kHorizontal);
}

/// bracket(d) - bracket(ih) == bracket(vertical) - bracket(horizontal), and the
/// same relation for two_factor_count_formula.
CheckOutcome check_ih_relation(const MatchedDiagram& d, EdgeId e, const BracketOptions& options = {});

struct Bubble {
  /// The two parallel non-matching edges, ascending.
  std::array<EdgeId, 2> parallel;
  /// Matching edges at the two bubble vertices.
  std::array<EdgeId, 2> outer;
  friend bool operator==(const Bubble&, const Bubble&) = default;
};

/// Bigon faces bounded by two non-matching edges whose outer matching edges
/// are distinct, ordered by the smaller parallel edge.
std::vector<Bubble> detect_bubbles(const MatchedDiagram& d);
/// Removes the bigon and fuses the outer matching edges into one edge that
/// keeps the smaller outer id.
MatchedDiagram collapse_bubble(const MatchedDiagram& d, const Bubble& bubble);
CheckOutcome check_bubble(const MatchedDiagram& d, const Bubble& bubble,
                          const BracketOptions& options = {});

/// Vanishing at z = 1 when a bridge exists; every bridge must be matching.
CheckOutcome check_bridge(const MatchedDiagram& d, const BracketOptions& options = {});
/// Vanishing at z = 1 when a complement cycle has length 3.
CheckOutcome check_triangle(const MatchedDiagram& d, const BracketOptions& options = {});

struct FaceLabel {
  std::size_t face = 0;
  /// Distinct matching edges on the walk.
  unsigned matching = 0;
  /// Distinct vertices on the walk whose matching edge is not on the walk.
  unsigned unmatched_vertices = 0;
};

/// One label per entry of faces(d), same order.
std::vector<FaceLabel> classify_faces(const MatchedDiagram& d);
/// True for the labels (1,0) (1,1) (1,2) (2,0) (2,1) (3,0).
bool is_reducible_face(const FaceLabel& label);

struct Reduction {
  MatchedDiagram result;
  std::vector<MoveRecord> moves;
};

/// Maximum IH-moves tried in the face-guided search once the complement is a
/// single cycle.
inline constexpr unsigned kReductionSearchDepth = 3;

// IH-moves until some complement cycle has length at most 3: first merge
// complement cycles until one remains, then search short move sequences on
// matching edges of reducible faces. Requires a connected bridgeless diagram;
// throws SearchExhausted if the search fails.
Reduction reduce_to_short_cycle(const MatchedDiagram& d);

MatchedDiagram apply_move(const MatchedDiagram& d, const MoveRecord& move);
MatchedDiagram replay(const MatchedDiagram& source, const std::vector<MoveRecord>& moves);

// Triangle vanishing reduced to its boundary: three resolution sites around a
// triangle whose six outer strand ends are joined by an arbitrary perfect
// pairing. For each pairing the alternating sum over the 8 states of
// (-1)^crosses 2^circles must vanish.
struct ClosureCase {
  /// Outer endpoints 0..5 in counterclockwise order; endpoint 2i and 2i+1
  /// belong to site i. All-open resolution joins 2i+1 to 2i+2 (mod 6).
  std::array<std::pair<int, int>, 3> pairing;
  /// circles[c] lists the circle counts of the states with c crosses, in
  /// ascending state order.
  std::array<std::vector<unsigned>, 4> circles;
  long long alternating_sum = 0;
};

struct ClosureReport {
  std::vector<ClosureCase> cases;
  bool passed() const;
};

ClosureReport triangle_closure_identity();
StrandModel closure_model(const std::array<std::pair<int, int>, 3>& pairing);

}  // namespace twofactor
