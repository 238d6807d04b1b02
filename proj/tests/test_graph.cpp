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

#include <algorithm>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "twofactor/errors.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/harness.hpp"

using namespace twofactor;

namespace {

MatchedDiagram load(const char* name) { return load_diagram(oracle::fixture(name)); }

std::vector<MatchedDiagram> fixtures() {
  return {load("theta.json"), load("p3-ladder.json"), load("p3-c.json"), load("k4.json")};
}

std::vector<std::size_t> cycle_lengths(const MatchedDiagram& d) {
  std::vector<std::size_t> out;
  for (const auto& c : complement_cycles(d).cycles) out.push_back(c.length());
  std::sort(out.begin(), out.end());
  return out;
}

// K4 where every vertex lists its neighbours in ascending order. Reading all
// rotations the same way embeds K4 in the torus.
MatchedDiagram toroidal_k4() {
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}};
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, std::uint32_t>>> incident(4);
  for (std::uint32_t i = 0; i < pairs.size(); ++i) {
    const auto [u, v] = pairs[i];
    edges.push_back({EdgeId{i}, {HalfEdgeId{2 * i}, HalfEdgeId{2 * i + 1}}, i == 0 || i == 5});
    incident[u].emplace_back(v, 2 * i);
    incident[v].emplace_back(u, 2 * i + 1);
  }
  std::vector<Vertex> vertices;
  for (std::uint32_t v = 0; v < 4; ++v) {
    std::sort(incident[v].begin(), incident[v].end());
    vertices.push_back({VertexId{v},
                        {HalfEdgeId{incident[v][0].second}, HalfEdgeId{incident[v][1].second},
                         HalfEdgeId{incident[v][2].second}}});
  }
  return MatchedDiagram("k4-torus", vertices, edges);
}

}  // namespace

TEST_CASE("bundled fixtures validate") {
  for (const auto& d : fixtures()) {
    CAPTURE(d.name());
    CHECK(validate(d).empty());
    CHECK(genus(d) == 0);
  }
  const auto circle = load("empty-circle.json");
  CHECK(validate(circle).empty());
  CHECK(circle.free_circles() == 1);
  CHECK(circle.vertices().empty());
}

TEST_CASE("removing a matching flag is reported") {
  MatchedDiagram theta = load("theta.json").with_matching({});
  const auto report = validate(theta);
  REQUIRE(!report.empty());
  CHECK(report.front() == "vertex 0 has no matching half-edge");
  CHECK_THROWS_AS(require_valid(theta), InvalidInput);
}

TEST_CASE("toroidal K4 fails the Euler check") {
  const MatchedDiagram k4 = toroidal_k4();
  const auto chi = oracle::euler_characteristics(k4);
  REQUIRE(chi.size() == 1);
  CHECK(chi[0] == 0);
  CHECK(genus(k4) == 1);
  const auto report = validate(k4);
  REQUIRE(report.size() == 1);
  CHECK(report[0].find("not spherical") != std::string::npos);
  CHECK(report[0].find("V - E + F = 0") != std::string::npos);
  CHECK_THROWS_AS(faces(k4), InvalidInput);
}

TEST_CASE("structural problems are reported, not thrown") {
  const auto theta = load("theta.json");
  auto vertices = theta.vertices();
  vertices[0].rotation[0] = HalfEdgeId{99};
  const MatchedDiagram broken("broken", vertices, theta.edges());
  CHECK(!validate(broken).empty());
  CHECK(!broken.structural_issues().empty());

  auto edges = theta.edges();
  edges[1].matching = true;  // vertex with two matching half-edges
  const auto report = validate(MatchedDiagram("double", theta.vertices(), edges));
  CHECK(std::find(report.begin(), report.end(), "vertex 0 has 2 matching half-edges") != report.end());
}

TEST_CASE("face counts") {
  CHECK(faces(load("theta.json")).size() == 3);
  CHECK(faces(load("p3-ladder.json")).size() == 5);
  CHECK(faces(load("k4.json")).size() == 4);
  for (const auto& d : fixtures()) {
    std::size_t sides = 0;
    for (const auto& walk : faces(d)) sides += walk.size();
    CHECK(sides == d.half_edge_count());
  }
}

TEST_CASE("complement cycles of the fixtures") {
  CHECK(cycle_lengths(load("theta.json")) == std::vector<std::size_t>{2});
  CHECK(cycle_lengths(load("p3-ladder.json")) == std::vector<std::size_t>{3, 3});
  // The six non-matching edges of P3 minus C close into one hexagon.
  CHECK(cycle_lengths(load("p3-c.json")) == std::vector<std::size_t>{6});
  CHECK(cycle_lengths(load("k4.json")) == std::vector<std::size_t>{4});
}

TEST_CASE("bridges of the fixtures and of a bridged join") {
  for (const auto& d : fixtures()) CHECK(find_bridges(d).empty());
  const auto theta = load("theta.json");
  const auto joined = bridge_join(theta, EdgeId{1}, theta, EdgeId{1});
  REQUIRE(validate(joined).empty());
  const auto bridges = find_bridges(joined);
  REQUIRE(bridges.size() == 1);
  CHECK(joined.find_edge(*bridges.begin())->matching);
  std::set<std::uint32_t> ids;
  for (EdgeId e : bridges) ids.insert(e.value);
  CHECK(ids == oracle::bridges(joined));
}

TEST_CASE("components and mirror") {
  const auto theta = load("theta.json");
  const auto two = disjoint_union(theta, theta);
  CHECK(validate(two).empty());
  CHECK(component_count(two) == 2);
  const auto parts = connected_components(two);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].vertices().size() == 2);
  CHECK(parts[1].edges().size() == 3);

  for (const auto& d : fixtures()) {
    const auto m = mirror(d);
    CHECK(validate(m).empty());
    CHECK(faces(m).size() == faces(d).size());
    CHECK(mirror(m).same_structure(d));
  }
}

TEST_CASE("JSON round trip and schema errors") {
  for (const auto& d : fixtures()) {
    const auto back = diagram_from_json(to_json(d));
    CHECK(back.same_structure(d));
    CHECK(back.name() == d.name());
  }
  CHECK_THROWS_AS(diagram_from_json(nlohmann::json::parse(R"({"vertices": 3})")), InvalidInput);
  CHECK_THROWS_AS(diagram_from_json(nlohmann::json::parse(R"({"vertices": [{"id": 0, "rotation": [1, 2]}], "edges": []})")),
                  InvalidInput);
  CHECK_THROWS_AS(load_diagram("/nonexistent/graph.json"), InvalidInput);
}

TEST_CASE("generated graphs: Euler, cycles and bridges against oracles") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto d = generate({static_cast<unsigned>(4 + 2 * (seed % 6)), seed});
    CAPTURE(d.name());
    CHECK(validate(d).empty());
    for (long chi : oracle::euler_characteristics(d)) CHECK(chi == 2);
    const auto cc = complement_cycles(d);
    std::size_t total = 0;
    std::set<VertexId> seen;
    for (const auto& c : cc.cycles) {
      total += c.length();
      for (const auto& [v, e] : c.steps) CHECK(seen.insert(v).second);
    }
    CHECK(total == d.edges().size() - d.matching_edges().size());
    CHECK(seen.size() == d.vertices().size());
    CHECK(find_bridges(d).empty());
    CHECK(oracle::bridges(d).empty());
    CHECK(mirror(mirror(d)).same_structure(d));
    CHECK(validate(mirror(d)).empty());
  }
}

TEST_CASE("bridge finder agrees with deletion oracle on bridged constructions") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = generate({4 + 2 * static_cast<unsigned>(seed % 2), seed});
    const auto b = generate({2 + 2 * static_cast<unsigned>(seed % 2), seed + 100});
    EdgeId ea{0}, eb{0};
    for (const auto& e : a.edges())
      if (!e.matching) { ea = e.id; break; }
    for (const auto& e : b.edges())
      if (!e.matching) { eb = e.id; break; }
    const auto j = bridge_join(a, ea, b, eb);
    REQUIRE(j.edges().size() <= 20);
    REQUIRE(validate(j).empty());
    std::set<std::uint32_t> ids;
    for (EdgeId e : find_bridges(j)) ids.insert(e.value);
    CHECK(ids == oracle::bridges(j));
    CHECK(ids.size() == 1);
  }
}
