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

#include "twofactor/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "twofactor/errors.hpp"

namespace twofactor {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Component label (smallest vertex index in the component) per vertex index.
std::vector<std::size_t> component_labels(const MatchedDiagram& d) {
  UnionFind uf(d.vertices().size());
  for (const Edge& e : d.edges()) {
    auto a = d.locate(e.ends[0]);
    auto b = d.locate(e.ends[1]);
    uf.unite(a->vertex, b->vertex);
  }
  std::vector<std::size_t> labels(d.vertices().size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = uf.find(i);
  return labels;
}

std::vector<FaceWalk> trace_faces(const MatchedDiagram& d) {
  std::vector<HalfEdgeId> all;
  all.reserve(d.half_edge_count());
  for (const Vertex& v : d.vertices())
    for (HalfEdgeId h : v.rotation) all.push_back(h);
  std::sort(all.begin(), all.end());

  std::unordered_set<HalfEdgeId> seen;
  std::vector<FaceWalk> out;
  for (HalfEdgeId start : all) {
    if (seen.contains(start)) continue;
    FaceWalk walk;
    HalfEdgeId h = start;
    do {
      seen.insert(h);
      walk.push_back(h);
      h = d.next_ccw(d.twin(h));
    } while (h != start);
    out.push_back(std::move(walk));
  }
  return out;
}

std::string euler_issue(const MatchedDiagram& d) {
  auto labels = component_labels(d);
  std::map<std::size_t, long> chi;
  for (std::size_t i = 0; i < labels.size(); ++i) chi[labels[i]] += 1;
  for (const Edge& e : d.edges()) chi[labels[d.locate(e.ends[0])->vertex]] -= 1;
  for (const FaceWalk& f : trace_faces(d)) chi[labels[d.locate(f.front())->vertex]] += 1;
  std::ostringstream out;
  bool first = true;
  for (const auto& [root, value] : chi) {
    if (value == 2) continue;
    if (!first) out << "; ";
    first = false;
    out << "component of vertex " << d.vertices()[root].id.value
        << " is not spherical: V - E + F = " << value;
  }
  return out.str();
}

}  // namespace

MatchedDiagram::MatchedDiagram(std::string name, std::vector<Vertex> vertices,
                               std::vector<Edge> edges, std::uint32_t free_circles)
    : name_(std::move(name)),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      free_circles_(free_circles) {
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  index();
}

void MatchedDiagram::index() {
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i].id == vertices_[i - 1].id)
      issues_.push_back("duplicate vertex id " + std::to_string(vertices_[i].id.value));
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].id == edges_[i - 1].id)
      issues_.push_back("duplicate edge id " + std::to_string(edges_[i].id.value));

  for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
    for (std::size_t p = 0; p < 3; ++p) {
      HalfEdgeSlot& s = slots_[vertices_[vi].rotation[p].value];
      if (s.vertex != HalfEdgeSlot::npos) {
        issues_.push_back("half-edge " + std::to_string(vertices_[vi].rotation[p].value) +
                          " appears in more than one rotation slot");
        continue;
      }
      s.vertex = vi;
      s.position = p;
    }
  }
  for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
    for (std::size_t k = 0; k < 2; ++k) {
      HalfEdgeSlot& s = slots_[edges_[ei].ends[k].value];
      if (s.edge != HalfEdgeSlot::npos) {
        issues_.push_back("half-edge " + std::to_string(edges_[ei].ends[k].value) +
                          " is an end of more than one edge");
        continue;
      }
      s.edge = ei;
      s.end = k;
    }
  }
  std::vector<std::uint32_t> ids;
  for (const auto& [h, s] : slots_) ids.push_back(h);
  std::sort(ids.begin(), ids.end());
  for (std::uint32_t h : ids) {
    const HalfEdgeSlot& s = slots_[h];
    if (s.vertex == HalfEdgeSlot::npos)
      issues_.push_back("half-edge " + std::to_string(h) + " is not in any vertex rotation");
    if (s.edge == HalfEdgeSlot::npos)
      issues_.push_back("half-edge " + std::to_string(h) + " is not an end of any edge");
  }
}

const Vertex* MatchedDiagram::find_vertex(VertexId id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, VertexId x) { return v.id < x; });
  return it != vertices_.end() && it->id == id ? &*it : nullptr;
}

const Edge* MatchedDiagram::find_edge(EdgeId id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, EdgeId x) { return e.id < x; });
  return it != edges_.end() && it->id == id ? &*it : nullptr;
}

std::optional<HalfEdgeSlot> MatchedDiagram::locate(HalfEdgeId h) const {
  auto it = slots_.find(h.value);
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

const Vertex& MatchedDiagram::vertex_of(HalfEdgeId h) const {
  return vertices_[slots_.at(h.value).vertex];
}

const Edge& MatchedDiagram::edge_of(HalfEdgeId h) const { return edges_[slots_.at(h.value).edge]; }

HalfEdgeId MatchedDiagram::twin(HalfEdgeId h) const {
  const HalfEdgeSlot& s = slots_.at(h.value);
  return edges_[s.edge].ends[1 - s.end];
}

HalfEdgeId MatchedDiagram::next_ccw(HalfEdgeId h) const {
  const HalfEdgeSlot& s = slots_.at(h.value);
  return vertices_[s.vertex].rotation[(s.position + 1) % 3];
}

std::optional<HalfEdgeId> MatchedDiagram::matching_half_edge(VertexId v) const {
  const Vertex* vx = find_vertex(v);
  if (!vx) return std::nullopt;
  for (HalfEdgeId h : vx->rotation)
    if (edge_of(h).matching) return h;
  return std::nullopt;
}

std::vector<EdgeId> MatchedDiagram::matching_edges() const {
  std::vector<EdgeId> out;
  for (const Edge& e : edges_)
    if (e.matching) out.push_back(e.id);
  return out;
}

std::uint32_t MatchedDiagram::next_vertex_id() const {
  return vertices_.empty() ? 0 : vertices_.back().id.value + 1;
}

std::uint32_t MatchedDiagram::next_edge_id() const {
  return edges_.empty() ? 0 : edges_.back().id.value + 1;
}

std::uint32_t MatchedDiagram::next_half_edge_id() const {
  std::uint32_t next = 0;
  for (const auto& [h, s] : slots_) next = std::max(next, h + 1);
  return next;
}

MatchedDiagram MatchedDiagram::renamed(std::string name) const {
  MatchedDiagram out = *this;
  out.name_ = std::move(name);
  return out;
}

MatchedDiagram MatchedDiagram::with_matching(const std::set<EdgeId>& matching) const {
  std::vector<Edge> edges = edges_;
  for (Edge& e : edges) e.matching = matching.contains(e.id);
  return MatchedDiagram(name_, vertices_, std::move(edges), free_circles_);
}

MatchedDiagram MatchedDiagram::with_free_circles(std::uint32_t count) const {
  MatchedDiagram out = *this;
  out.free_circles_ = count;
  return out;
}

bool MatchedDiagram::same_structure(const MatchedDiagram& other) const {
  return vertices_ == other.vertices_ && edges_ == other.edges_ &&
         free_circles_ == other.free_circles_;
}

std::vector<std::string> validate_embedding(const MatchedDiagram& d) {
  std::vector<std::string> report = d.structural_issues();
  if (!report.empty()) return report;
  if (std::string euler = euler_issue(d); !euler.empty()) report.push_back(euler);
  return report;
}

std::vector<std::string> validate(const MatchedDiagram& d) {
  std::vector<std::string> report = d.structural_issues();
  if (!report.empty()) return report;

  for (const Vertex& v : d.vertices()) {
    int matched = 0;
    for (HalfEdgeId h : v.rotation) matched += d.edge_of(h).matching ? 1 : 0;
    if (matched == 0) {
      report.push_back("vertex " + std::to_string(v.id.value) + " has no matching half-edge");
    } else if (matched > 1) {
      report.push_back("vertex " + std::to_string(v.id.value) + " has " +
                       std::to_string(matched) + " matching half-edges");
    }
  }
  for (const Edge& e : d.edges()) {
    if (e.matching && d.locate(e.ends[0])->vertex == d.locate(e.ends[1])->vertex)
      report.push_back("matching edge " + std::to_string(e.id.value) + " is a loop");
  }
  if (std::string euler = euler_issue(d); !euler.empty()) report.push_back(euler);
  return report;
}

void require_valid(const MatchedDiagram& d) {
  auto report = validate(d);
  if (report.empty()) return;
  std::string msg = "invalid diagram '" + d.name() + "': " + report.front();
  if (report.size() > 1) msg += " (and " + std::to_string(report.size() - 1) + " more)";
  throw InvalidInput(msg);
}

std::vector<FaceWalk> faces(const MatchedDiagram& d) {
  require_valid(d);
  return trace_faces(d);
}

std::vector<FaceWalk> embedding_faces(const MatchedDiagram& d) {
  auto report = validate_embedding(d);
  if (!report.empty()) throw InvalidInput("invalid diagram '" + d.name() + "': " + report.front());
  return trace_faces(d);
}

ComplementCycles complement_cycles(const MatchedDiagram& d) {
  require_valid(d);
  ComplementCycles out;
  out.free_circles = d.free_circles();
  std::unordered_set<VertexId> seen;

  // The other non-matching half-edge at h's vertex.
  auto partner = [&](HalfEdgeId h) {
    const Vertex& v = d.vertex_of(h);
    for (HalfEdgeId x : v.rotation)
      if (x != h && !d.edge_of(x).matching) return x;
    return h;
  };

  for (const Vertex& v : d.vertices()) {
    if (seen.contains(v.id)) continue;
    HalfEdgeId start = d.next_ccw(*d.matching_half_edge(v.id));
    ComplementCycle cycle;
    HalfEdgeId h = start;
    do {
      const Vertex& at = d.vertex_of(h);
      seen.insert(at.id);
      cycle.steps.emplace_back(at.id, d.edge_of(h).id);
      h = partner(d.twin(h));
    } while (h != start);
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

std::set<EdgeId> find_bridges(const MatchedDiagram& d) {
  require_valid(d);
  const std::size_t n = d.vertices().size();
  // Adjacency as (neighbour index, edge index).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t ei = 0; ei < d.edges().size(); ++ei) {
    const Edge& e = d.edges()[ei];
    std::size_t a = d.locate(e.ends[0])->vertex;
    std::size_t b = d.locate(e.ends[1])->vertex;
    if (a == b) continue;
    adj[a].emplace_back(b, ei);
    adj[b].emplace_back(a, ei);
  }

  std::vector<int> disc(n, -1), low(n, 0);
  std::set<EdgeId> bridges;
  int clock = 0;
  struct Frame {
    std::size_t vertex;
    std::size_t parent_edge;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, HalfEdgeSlot::npos, 0}};
    disc[root] = low[root] = clock++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.vertex].size()) {
        auto [to, ei] = adj[f.vertex][f.next++];
        if (ei == f.parent_edge) continue;
        if (disc[to] < 0) {
          disc[to] = low[to] = clock++;
          stack.push_back({to, ei, 0});
        } else {
          low[f.vertex] = std::min(low[f.vertex], disc[to]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) break;
      Frame& parent = stack.back();
      low[parent.vertex] = std::min(low[parent.vertex], low[done.vertex]);
      if (low[done.vertex] > disc[parent.vertex]) bridges.insert(d.edges()[done.parent_edge].id);
    }
  }
  return bridges;
}

std::vector<MatchedDiagram> connected_components(const MatchedDiagram& d) {
  require_valid(d);
  auto labels = component_labels(d);
  std::map<std::size_t, std::pair<std::vector<Vertex>, std::vector<Edge>>> parts;
  for (std::size_t i = 0; i < labels.size(); ++i) parts[labels[i]].first.push_back(d.vertices()[i]);
  for (const Edge& e : d.edges()) parts[labels[d.locate(e.ends[0])->vertex]].second.push_back(e);
  std::vector<MatchedDiagram> out;
  std::size_t index = 0;
  for (auto& [root, part] : parts) {
    out.emplace_back(d.name() + "#" + std::to_string(index++), std::move(part.first),
                     std::move(part.second), 0);
  }
  return out;
}

std::size_t component_count(const MatchedDiagram& d) {
  auto labels = component_labels(d);
  std::sort(labels.begin(), labels.end());
  return static_cast<std::size_t>(std::unique(labels.begin(), labels.end()) - labels.begin());
}

MatchedDiagram mirror(const MatchedDiagram& d) {
  require_valid(d);
  std::vector<Vertex> vertices = d.vertices();
  for (Vertex& v : vertices) std::reverse(v.rotation.begin(), v.rotation.end());
  return MatchedDiagram(d.name(), std::move(vertices), d.edges(), d.free_circles());
}

int genus(const MatchedDiagram& d) {
  if (!d.structural_issues().empty()) throw InvalidInput(d.structural_issues().front());
  auto labels = component_labels(d);
  std::map<std::size_t, long> chi;
  for (std::size_t i = 0; i < labels.size(); ++i) chi[labels[i]] += 1;
  for (const Edge& e : d.edges()) chi[labels[d.locate(e.ends[0])->vertex]] -= 1;
  for (const FaceWalk& f : trace_faces(d)) chi[labels[d.locate(f.front())->vertex]] += 1;
  long g = 0;
  for (const auto& [root, value] : chi) g += (2 - value) / 2;
  return static_cast<int>(g);
}

nlohmann::json to_json(const MatchedDiagram& d) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Vertex& v : d.vertices()) {
    vertices.push_back({{"id", v.id.value},
                        {"rotation", {v.rotation[0].value, v.rotation[1].value,
                                      v.rotation[2].value}}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : d.edges()) {
    edges.push_back({{"id", e.id.value},
                     {"ends", {e.ends[0].value, e.ends[1].value}},
                     {"matching", e.matching}});
  }
  nlohmann::json j;
  j["name"] = d.name();
  j["free_circles"] = d.free_circles();
  j["vertices"] = std::move(vertices);
  j["edges"] = std::move(edges);
  return j;
}

namespace {

std::uint32_t read_id(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0 ||
      j.get<std::int64_t>() > static_cast<std::int64_t>(UINT32_MAX))
    throw InvalidInput(std::string(what) + " must be a nonnegative 32-bit integer");
  return j.get<std::uint32_t>();
}

}  // namespace

MatchedDiagram diagram_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("graph JSON must be an object");
  std::string name = j.value("name", std::string());
  std::uint32_t free_circles = j.contains("free_circles") ? read_id(j["free_circles"], "free_circles") : 0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw InvalidInput("graph JSON needs a 'vertices' array");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw InvalidInput("graph JSON needs an 'edges' array");
  for (const auto& v : j["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v.contains("rotation"))
      throw InvalidInput("vertex records need 'id' and 'rotation'");
    const auto& rot = v["rotation"];
    if (!rot.is_array() || rot.size() != 3)
      throw InvalidInput("vertex " + v["id"].dump() + ": rotation must list exactly 3 half-edges");
    vertices.push_back({VertexId{read_id(v["id"], "vertex id")},
                        {HalfEdgeId{read_id(rot[0], "half-edge id")},
                         HalfEdgeId{read_id(rot[1], "half-edge id")},
                         HalfEdgeId{read_id(rot[2], "half-edge id")}}});
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("ends"))
      throw InvalidInput("edge records need 'id' and 'ends'");
    const auto& ends = e["ends"];
    if (!ends.is_array() || ends.size() != 2)
      throw InvalidInput("edge " + e["id"].dump() + ": ends must list exactly 2 half-edges");
    bool matching = false;
    if (e.contains("matching")) {
      if (!e["matching"].is_boolean()) throw InvalidInput("edge 'matching' must be a boolean");
      matching = e["matching"].get<bool>();
    }
    edges.push_back({EdgeId{read_id(e["id"], "edge id")},
                     {HalfEdgeId{read_id(ends[0], "half-edge id")},
                      HalfEdgeId{read_id(ends[1], "half-edge id")}},
                     matching});
  }
  return MatchedDiagram(std::move(name), std::move(vertices), std::move(edges), free_circles);
}

MatchedDiagram load_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("'" + path + "': " + e.what());
  }
  return diagram_from_json(j);
}

}  // namespace twofactor
