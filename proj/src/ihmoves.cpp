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

#include "twofactor/ihmoves.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "twofactor/errors.hpp"
#include "twofactor/factors.hpp"

namespace twofactor {

namespace {

std::string str(const BigInt& x) { return x.str(); }

const std::map<MoveKind, const char*>& kind_names() {
  static const std::map<MoveKind, const char*> names{
      {MoveKind::kIh, "ih"},
      {MoveKind::kSmoothVertical, "smooth_vertical"},
      {MoveKind::kSmoothHorizontal, "smooth_horizontal"},
      {MoveKind::kBubbleCollapse, "bubble_collapse"}};
  return names;
}

}  // namespace

const char* to_string(MoveKind kind) { return kind_names().at(kind); }

nlohmann::json moves_to_json(const std::vector<MoveRecord>& moves) {
  nlohmann::json out = nlohmann::json::array();
  for (const MoveRecord& m : moves) {
    nlohmann::json edges = nlohmann::json::array();
    for (EdgeId e : m.edges) edges.push_back(e.value);
    out.push_back({{"kind", to_string(m.kind)}, {"edges", edges}, {"result", m.result_name}});
  }
  return out;
}

std::vector<MoveRecord> moves_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("move log must be a JSON array");
  std::vector<MoveRecord> out;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("kind") || !item.contains("edges") ||
        !item["kind"].is_string() || !item["edges"].is_array())
      throw InvalidInput("move records need a string 'kind' and an 'edges' array");
    MoveRecord m;
    const std::string kind = item["kind"].get<std::string>();
    auto it = std::find_if(kind_names().begin(), kind_names().end(),
                           [&](const auto& kv) { return kind == kv.second; });
    if (it == kind_names().end()) throw InvalidInput("unknown move kind '" + kind + "'");
    m.kind = it->first;
    for (const auto& e : item["edges"]) {
      if (!e.is_number_unsigned()) throw InvalidInput("move edges must be nonnegative integers");
      m.edges.push_back(EdgeId{e.get<std::uint32_t>()});
    }
    m.result_name = item.value("result", std::string());
    out.push_back(std::move(m));
  }
  return out;
}

MatchedDiagram ih_move(const MatchedDiagram& d, EdgeId e) {
  require_valid(d);
  const LocalStrands s = local_strands(d, e);
  const VertexId u = d.vertex_of(s.eu).id;
  const VertexId v = d.vertex_of(s.ev).id;
  std::vector<Vertex> vertices = d.vertices();
  for (Vertex& x : vertices) {
    if (x.id == u) x.rotation = {s.eu, s.d, s.a};
    if (x.id == v) x.rotation = {s.ev, s.b, s.c};
  }
  return MatchedDiagram(d.name() + "/ih" + std::to_string(e.value), std::move(vertices), d.edges(),
                        d.free_circles());
}

MatchedDiagram smooth(const MatchedDiagram& d, EdgeId e, SmoothDirection direction) {
  require_valid(d);
  const LocalStrands s = local_strands(d, e);
  const VertexId u = d.vertex_of(s.eu).id;
  const VertexId v = d.vertex_of(s.ev).id;

  std::unordered_map<HalfEdgeId, HalfEdgeId> joined;
  auto join = [&](HalfEdgeId x, HalfEdgeId y) {
    joined[x] = y;
    joined[y] = x;
  };
  if (direction == SmoothDirection::kVertical) {
    join(s.a, s.d);
    join(s.b, s.c);
  } else {
    join(s.a, s.b);
    join(s.c, s.d);
  }
  auto dangling = [&](HalfEdgeId h) { return joined.contains(h); };

  std::vector<Vertex> vertices;
  for (const Vertex& x : d.vertices())
    if (x.id != u && x.id != v) vertices.push_back(x);

  std::vector<Edge> edges;
  std::unordered_set<HalfEdgeId> consumed;
  for (const Edge& edge : d.edges()) {
    if (edge.id == e) continue;
    if (!dangling(edge.ends[0]) && !dangling(edge.ends[1])) {
      edges.push_back(edge);
      continue;
    }
    // Walk from a surviving end through the joins to the other surviving end.
    for (HalfEdgeId start : edge.ends) {
      if (dangling(start) || consumed.contains(start)) continue;
      EdgeId keep = edge.id;
      HalfEdgeId far = d.twin(start);
      while (dangling(far)) {
        consumed.insert(far);
        HalfEdgeId next = joined.at(far);
        consumed.insert(next);
        keep = std::min(keep, d.edge_of(next).id);
        far = d.twin(next);
      }
      consumed.insert(start);
      consumed.insert(far);
      edges.push_back({keep, {start, far}, false});
    }
  }

  std::uint32_t circles = d.free_circles();
  for (HalfEdgeId h : {s.a, s.b, s.c, s.d}) {
    if (consumed.contains(h)) continue;
    ++circles;
    HalfEdgeId x = h;
    do {
      consumed.insert(x);
      HalfEdgeId y = d.twin(x);
      consumed.insert(y);
      x = joined.at(y);
    } while (x != h);
  }

  const char* tag = direction == SmoothDirection::kVertical ? "/sv" : "/sh";
  return MatchedDiagram(d.name() + tag + std::to_string(e.value), std::move(vertices),
                        std::move(edges), circles);
}

CheckOutcome check_ih_relation(const MatchedDiagram& d, EdgeId e, const BracketOptions& options) {
  const MatchedDiagram h = ih_move(d, e);
  const MatchedDiagram sv = smooth_vertical(d, e);
  const MatchedDiagram sh = smooth_horizontal(d, e);

  const LaurentPoly poly_lhs = bracket_state_sum(d, options) - bracket_state_sum(h, options);
  const LaurentPoly poly_rhs = bracket_state_sum(sv, options) - bracket_state_sum(sh, options);
  const BigInt count_lhs = two_factor_count_formula(d) - two_factor_count_formula(h);
  const BigInt count_rhs = two_factor_count_formula(sv) - two_factor_count_formula(sh);

  CheckOutcome out;
  out.passed = poly_lhs == poly_rhs && count_lhs == count_rhs;
  out.detail = {{"edge", e.value},
                {"polynomial_lhs", poly_lhs.to_text()},
                {"polynomial_rhs", poly_rhs.to_text()},
                {"count_lhs", str(count_lhs)},
                {"count_rhs", str(count_rhs)}};
  return out;
}

namespace {

// Bubble described by the parallel edges, or nullopt with a reason.
std::optional<Bubble> bubble_at(const MatchedDiagram& d, EdgeId p, EdgeId q, std::string* why) {
  const Edge* ep = d.find_edge(p);
  const Edge* eq = d.find_edge(q);
  auto fail = [&](std::string reason) -> std::optional<Bubble> {
    if (why) *why = std::move(reason);
    return std::nullopt;
  };
  if (!ep || !eq || p == q) return fail("bubble edges must be two distinct existing edges");
  if (ep->matching || eq->matching) return fail("bubble edges must be non-matching");
  const VertexId x = d.vertex_of(ep->ends[0]).id;
  const VertexId y = d.vertex_of(ep->ends[1]).id;
  const VertexId qx = d.vertex_of(eq->ends[0]).id;
  const VertexId qy = d.vertex_of(eq->ends[1]).id;
  if (x == y || !((qx == x && qy == y) || (qx == y && qy == x)))
    return fail("bubble edges must be parallel between two distinct vertices");
  const EdgeId mx = d.edge_of(*d.matching_half_edge(x)).id;
  const EdgeId my = d.edge_of(*d.matching_half_edge(y)).id;
  if (mx == my)
    return fail("outer matching edges coincide (theta graph); collapsing would create a matching loop");
  Bubble b{{std::min(p, q), std::max(p, q)}, {std::min(mx, my), std::max(mx, my)}};
  return b;
}

bool bounds_bigon(const MatchedDiagram& d, const Bubble& b) {
  for (const FaceWalk& f : faces(d)) {
    if (f.size() != 2) continue;
    std::array<EdgeId, 2> ids{d.edge_of(f[0]).id, d.edge_of(f[1]).id};
    std::sort(ids.begin(), ids.end());
    if (ids == b.parallel) return true;
  }
  return false;
}

}  // namespace

std::vector<Bubble> detect_bubbles(const MatchedDiagram& d) {
  std::vector<Bubble> out;
  for (const FaceWalk& f : faces(d)) {
    if (f.size() != 2) continue;
    EdgeId p = d.edge_of(f[0]).id;
    EdgeId q = d.edge_of(f[1]).id;
    auto b = bubble_at(d, p, q, nullptr);
    if (b && std::find(out.begin(), out.end(), *b) == out.end()) out.push_back(*b);
  }
  std::sort(out.begin(), out.end(),
            [](const Bubble& l, const Bubble& r) { return l.parallel < r.parallel; });
  return out;
}

MatchedDiagram collapse_bubble(const MatchedDiagram& d, const Bubble& bubble) {
  require_valid(d);
  std::string why;
  auto b = bubble_at(d, bubble.parallel[0], bubble.parallel[1], &why);
  if (!b) throw InvalidInput("cannot collapse bubble: " + why);
  if (b->outer != bubble.outer) throw InvalidInput("cannot collapse bubble: outer edges do not match");
  if (!bounds_bigon(d, *b)) throw InvalidInput("cannot collapse bubble: its edges do not bound a face");

  const Edge& p = *d.find_edge(b->parallel[0]);
  const VertexId x = d.vertex_of(p.ends[0]).id;
  const VertexId y = d.vertex_of(p.ends[1]).id;
  // Far ends of the two outer matching edges.
  auto far_end = [&](VertexId at) {
    HalfEdgeId h = *d.matching_half_edge(at);
    return d.twin(h);
  };
  const HalfEdgeId fx = far_end(x);
  const HalfEdgeId fy = far_end(y);

  std::vector<Vertex> vertices;
  for (const Vertex& w : d.vertices())
    if (w.id != x && w.id != y) vertices.push_back(w);
  std::vector<Edge> edges;
  for (const Edge& e : d.edges()) {
    if (e.id == b->parallel[0] || e.id == b->parallel[1] || e.id == b->outer[0] ||
        e.id == b->outer[1])
      continue;
    edges.push_back(e);
  }
  edges.push_back({b->outer[0], {fx, fy}, true});
  return MatchedDiagram(d.name() + "/bc" + std::to_string(b->parallel[0].value),
                        std::move(vertices), std::move(edges), d.free_circles());
}

CheckOutcome check_bubble(const MatchedDiagram& d, const Bubble& bubble,
                          const BracketOptions& options) {
  const MatchedDiagram collapsed = collapse_bubble(d, bubble);
  const BigInt before = bracket_state_sum(d, options).eval_at_one();
  const BigInt after = bracket_state_sum(collapsed, options).eval_at_one();
  const BigInt count_before = two_factor_count_formula(d);
  const BigInt count_after = two_factor_count_formula(collapsed);
  CheckOutcome out;
  out.passed = before == 2 * after && count_before == 2 * count_after;
  out.detail = {{"parallel", {bubble.parallel[0].value, bubble.parallel[1].value}},
                {"outer", {bubble.outer[0].value, bubble.outer[1].value}},
                {"bracket_at_one", str(before)},
                {"collapsed_bracket_at_one", str(after)},
                {"count", str(count_before)},
                {"collapsed_count", str(count_after)}};
  return out;
}

CheckOutcome check_bridge(const MatchedDiagram& d, const BracketOptions& options) {
  CheckOutcome out;
  const std::set<EdgeId> bridges = find_bridges(d);
  nlohmann::json ids = nlohmann::json::array();
  for (EdgeId e : bridges) ids.push_back(e.value);
  out.detail["bridges"] = ids;
  if (bridges.empty()) {
    out.triggered = false;
    return out;
  }
  bool all_matching = std::all_of(bridges.begin(), bridges.end(),
                                  [&](EdgeId e) { return d.find_edge(e)->matching; });
  const BigInt at_one = bracket_state_sum(d, options).eval_at_one();
  const BigInt count = two_factor_count_formula(d);
  out.passed = all_matching && at_one == 0 && count == 0;
  out.detail["all_matching"] = all_matching;
  out.detail["bracket_at_one"] = str(at_one);
  out.detail["count"] = str(count);
  return out;
}

CheckOutcome check_triangle(const MatchedDiagram& d, const BracketOptions& options) {
  CheckOutcome out;
  const ComplementCycles cc = complement_cycles(d);
  out.triggered = std::any_of(cc.cycles.begin(), cc.cycles.end(),
                              [](const ComplementCycle& c) { return c.length() == 3; });
  if (!out.triggered) return out;
  const BigInt at_one = bracket_state_sum(d, options).eval_at_one();
  out.passed = at_one == 0;
  out.detail["bracket_at_one"] = str(at_one);
  return out;
}

std::vector<FaceLabel> classify_faces(const MatchedDiagram& d) {
  const std::vector<FaceWalk> walks = faces(d);
  std::vector<FaceLabel> out;
  out.reserve(walks.size());
  for (std::size_t i = 0; i < walks.size(); ++i) {
    std::set<EdgeId> on_walk;
    std::set<VertexId> vertices;
    for (HalfEdgeId h : walks[i]) {
      on_walk.insert(d.edge_of(h).id);
      vertices.insert(d.vertex_of(h).id);
    }
    FaceLabel label{i, 0, 0};
    for (EdgeId e : on_walk) label.matching += d.find_edge(e)->matching ? 1 : 0;
    for (VertexId v : vertices) {
      EdgeId m = d.edge_of(*d.matching_half_edge(v)).id;
      if (!on_walk.contains(m)) ++label.unmatched_vertices;
    }
    out.push_back(label);
  }
  return out;
}

bool is_reducible_face(const FaceLabel& label) {
  switch (label.matching) {
    case 1:
      return label.unmatched_vertices <= 2;
    case 2:
      return label.unmatched_vertices <= 1;
    case 3:
      return label.unmatched_vertices == 0;
    default:
      return false;
  }
}

namespace {

bool has_short_cycle(const MatchedDiagram& d) {
  for (const ComplementCycle& c : complement_cycles(d).cycles)
    if (c.length() <= 3) return true;
  return false;
}

std::vector<EdgeId> reducible_face_edges(const MatchedDiagram& d) {
  const std::vector<FaceWalk> walks = faces(d);
  std::set<EdgeId> out;
  for (const FaceLabel& label : classify_faces(d)) {
    if (!is_reducible_face(label)) continue;
    for (HalfEdgeId h : walks[label.face])
      if (d.edge_of(h).matching) out.insert(d.edge_of(h).id);
  }
  return {out.begin(), out.end()};
}

bool search_short(const MatchedDiagram& d, unsigned depth, std::vector<MoveRecord>& path,
                  MatchedDiagram& found) {
  for (EdgeId e : reducible_face_edges(d)) {
    MatchedDiagram next = ih_move(d, e);
    path.push_back({MoveKind::kIh, {e}, next.name()});
    if (has_short_cycle(next)) {
      found = std::move(next);
      return true;
    }
    if (depth > 1 && search_short(next, depth - 1, path, found)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace

Reduction reduce_to_short_cycle(const MatchedDiagram& d) {
  require_valid(d);
  if (component_count(d) != 1) throw InvalidInput("reduction needs a connected diagram");
  if (!find_bridges(d).empty()) throw InvalidInput("reduction needs a bridgeless diagram");

  Reduction out{d, {}};
  if (has_short_cycle(d)) return out;

  for (;;) {
    const ComplementCycles cc = complement_cycles(out.result);
    if (cc.cycles.size() <= 1) break;
    std::unordered_map<VertexId, std::size_t> cycle_of;
    for (std::size_t i = 0; i < cc.cycles.size(); ++i)
      for (const auto& [v, e] : cc.cycles[i].steps) cycle_of[v] = i;
    std::optional<EdgeId> merge;
    for (EdgeId e : out.result.matching_edges()) {
      const Edge& edge = *out.result.find_edge(e);
      if (cycle_of.at(out.result.vertex_of(edge.ends[0]).id) !=
          cycle_of.at(out.result.vertex_of(edge.ends[1]).id)) {
        merge = e;
        break;
      }
    }
    if (!merge) throw SearchExhausted("no matching edge joins two complement cycles");
    out.result = ih_move(out.result, *merge);
    out.moves.push_back({MoveKind::kIh, {*merge}, out.result.name()});
  }
  if (has_short_cycle(out.result)) return out;

  std::vector<MoveRecord> path;
  MatchedDiagram found;
  if (!search_short(out.result, kReductionSearchDepth, path, found))
    throw SearchExhausted("no IH-move sequence of length <= " +
                          std::to_string(kReductionSearchDepth) +
                          " on reducible faces yields a complement cycle of length <= 3 for '" +
                          d.name() + "'");
  out.moves.insert(out.moves.end(), path.begin(), path.end());
  out.result = std::move(found);
  return out;
}

MatchedDiagram apply_move(const MatchedDiagram& d, const MoveRecord& move) {
  auto need = [&](std::size_t n) {
    if (move.edges.size() != n)
      throw InvalidInput(std::string("move '") + to_string(move.kind) + "' takes " +
                         std::to_string(n) + " edge id(s)");
  };
  switch (move.kind) {
    case MoveKind::kIh:
      need(1);
      return ih_move(d, move.edges[0]);
    case MoveKind::kSmoothVertical:
      need(1);
      return smooth_vertical(d, move.edges[0]);
    case MoveKind::kSmoothHorizontal:
      need(1);
      return smooth_horizontal(d, move.edges[0]);
    case MoveKind::kBubbleCollapse: {
      need(2);
      std::string why;
      auto b = bubble_at(d, move.edges[0], move.edges[1], &why);
      if (!b) throw InvalidInput("cannot replay bubble collapse: " + why);
      return collapse_bubble(d, *b);
    }
  }
  throw InvalidInput("unknown move kind");
}

MatchedDiagram replay(const MatchedDiagram& source, const std::vector<MoveRecord>& moves) {
  MatchedDiagram current = source;
  for (const MoveRecord& m : moves) current = apply_move(current, m);
  return current;
}

}  // namespace twofactor
