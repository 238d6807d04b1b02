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
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace twofactor {

template <class Tag>
struct Id {
  std::uint32_t value = 0;
  friend auto operator<=>(const Id&, const Id&) = default;
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;
using HalfEdgeId = Id<struct HalfEdgeTag>;

struct Vertex {
  VertexId id;
  /// Incident half-edges in counterclockwise order.
  std::array<HalfEdgeId, 3> rotation;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  EdgeId id;
  std::array<HalfEdgeId, 2> ends;
  bool matching = false;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Where a half-edge lives: its vertex and slot in the rotation, its edge and
/// which end of it.
struct HalfEdgeSlot {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t vertex = npos;
  std::size_t position = npos;
  std::size_t edge = npos;
  std::size_t end = npos;
};

// A trivalent multigraph embedded on the sphere by a rotation system, with a
// set of flagged perfect-matching edges and a count of vertex-free circles.
// Immutable once built; every rewrite produces a new diagram.
//
// Vertices and edges are kept sorted by id. Construction never throws on
// inconsistent input; call validate() to find out what is wrong.
class MatchedDiagram {
 public:
  MatchedDiagram() = default;
  MatchedDiagram(std::string name, std::vector<Vertex> vertices, std::vector<Edge> edges,
                 std::uint32_t free_circles = 0);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::uint32_t free_circles() const noexcept { return free_circles_; }

  const Vertex* find_vertex(VertexId id) const;
  const Edge* find_edge(EdgeId id) const;
  std::optional<HalfEdgeSlot> locate(HalfEdgeId h) const;

  // The following assume a structurally consistent diagram.
  const Vertex& vertex_of(HalfEdgeId h) const;
  const Edge& edge_of(HalfEdgeId h) const;
  /// The other end of h's edge.
  HalfEdgeId twin(HalfEdgeId h) const;
  /// Counterclockwise successor of h at its vertex.
  HalfEdgeId next_ccw(HalfEdgeId h) const;
  /// The matching half-edge at v, if any.
  std::optional<HalfEdgeId> matching_half_edge(VertexId v) const;

  /// Matching edge ids in ascending order.
  std::vector<EdgeId> matching_edges() const;
  std::size_t half_edge_count() const noexcept { return slots_.size(); }
  /// Largest id in use plus one, per id kind. Used to mint fresh ids.
  std::uint32_t next_vertex_id() const;
  std::uint32_t next_edge_id() const;
  std::uint32_t next_half_edge_id() const;

  MatchedDiagram renamed(std::string name) const;
  /// Same embedding with exactly `matching` flagged.
  MatchedDiagram with_matching(const std::set<EdgeId>& matching) const;
  MatchedDiagram with_free_circles(std::uint32_t count) const;

  /// Problems detected while indexing (duplicate or dangling ids).
  const std::vector<std::string>& structural_issues() const noexcept { return issues_; }

  /// Structural equality; the name is ignored.
  bool same_structure(const MatchedDiagram& other) const;

 private:
  void index();

  std::string name_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::uint32_t free_circles_ = 0;

  std::unordered_map<std::uint32_t, HalfEdgeSlot> slots_;
  std::vector<std::string> issues_;
};

/// Empty when valid; otherwise one human-readable line per violation.
std::vector<std::string> validate(const MatchedDiagram& d);
/// Only the structural and sphericity checks of validate(); matching flags
/// are not inspected.
std::vector<std::string> validate_embedding(const MatchedDiagram& d);
/// Throws InvalidInput carrying the first violations when d is not valid.
void require_valid(const MatchedDiagram& d);

using FaceWalk = std::vector<HalfEdgeId>;
/// Face walks of the rotation system. A walk lists darts h with the face
/// lying on the side traced by next = next_ccw(twin(h)). Each half-edge occurs
/// in exactly one walk; walks start at their smallest half-edge and are
/// ordered by that start.
std::vector<FaceWalk> faces(const MatchedDiagram& d);
/// faces() for a diagram whose matching flags are not (yet) meaningful.
std::vector<FaceWalk> embedding_faces(const MatchedDiagram& d);

struct ComplementCycle {
  /// (vertex, outgoing non-matching edge) pairs around the cycle, starting at
  /// the smallest vertex.
  std::vector<std::pair<VertexId, EdgeId>> steps;
  std::size_t length() const noexcept { return steps.size(); }
};

struct ComplementCycles {
  std::vector<ComplementCycle> cycles;
  std::uint32_t free_circles = 0;
};

/// Cycles of G minus M, ordered by smallest contained vertex.
ComplementCycles complement_cycles(const MatchedDiagram& d);

std::set<EdgeId> find_bridges(const MatchedDiagram& d);

/// Connected components (by vertices), ordered by smallest vertex id. Free
/// circles are not part of any component.
std::vector<MatchedDiagram> connected_components(const MatchedDiagram& d);
std::size_t component_count(const MatchedDiagram& d);

/// Reverses every rotation.
MatchedDiagram mirror(const MatchedDiagram& d);

/// Sum over components of (2 - (V - E + F)) / 2.
int genus(const MatchedDiagram& d);

nlohmann::json to_json(const MatchedDiagram& d);
MatchedDiagram diagram_from_json(const nlohmann::json& j);
MatchedDiagram load_diagram(const std::string& path);

}  // namespace twofactor

template <class Tag>
struct std::hash<twofactor::Id<Tag>> {
  std::size_t operator()(const twofactor::Id<Tag>& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
