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
#include <bit>

#include "doctest.h"
#include "oracles.hpp"
#include "twofactor/bracket.hpp"
#include "twofactor/errors.hpp"
#include "twofactor/harness.hpp"

using namespace twofactor;

namespace {

MatchedDiagram load(const char* name) { return load_diagram(oracle::fixture(name)); }
LaurentPoly poly(const char* text) { return LaurentPoly::from_text(text); }

std::vector<unsigned> column(const CubeOfResolutions& c, unsigned crosses) {
  std::vector<unsigned> out;
  for (const auto& s : c.states)
    if (s.crosses == crosses) out.push_back(s.circles);
  return out;
}

}  // namespace

TEST_CASE("fixture brackets") {
  CHECK(bracket_state_sum(load("theta.json")) == poly("z^-2 + 1"));
  CHECK(bracket_state_sum(load("p3-ladder.json")) == poly("z^-3 - z^2 + z^3 - z^4"));
  CHECK(bracket_state_sum(load("p3-c.json")) == poly("z^-2 - z^-1 + 1 + z^3"));
  CHECK(bracket_state_sum(load("empty-circle.json")) == poly("z^-1 + z"));
}

TEST_CASE("fixture brackets agree with the union-find oracle") {
  for (const char* name : {"theta.json", "p3-ladder.json", "p3-c.json", "k4.json", "empty-circle.json"}) {
    CAPTURE(name);
    const auto d = load(name);
    CHECK(bracket_state_sum(d) == oracle::bracket(d));
  }
}

TEST_CASE("resolution pairings on theta") {
  const auto theta = load("theta.json");
  const ResolutionState open{0, 1}, cross{1, 1};
  CHECK(circle_count(theta, open) == 2);
  CHECK(circle_count(theta, cross) == 1);
  const LocalStrands s = local_strands(theta, EdgeId{0});
  const auto o = resolution_pairing(theta, EdgeId{0}, Resolution::kOpen);
  const auto c = resolution_pairing(theta, EdgeId{0}, Resolution::kCross);
  CHECK(o[0] == StrandPair{s.a, s.d});
  CHECK(o[1] == StrandPair{s.b, s.c});
  CHECK(c[0] == StrandPair{s.a, s.c});
  CHECK(c[1] == StrandPair{s.b, s.d});
  CHECK_THROWS_AS(local_strands(theta, EdgeId{1}), InvalidInput);
  CHECK_THROWS_AS(local_strands(theta, EdgeId{7}), InvalidInput);
}

TEST_CASE("P3 ladder extreme states") {
  const auto d = load("p3-ladder.json");
  CHECK(circle_count(d, ResolutionState{0, 3}) == 3);
  CHECK(circle_count(d, ResolutionState{7, 3}) == 1);
  CHECK(ResolutionState{5, 3}.to_string() == "101");
  CHECK(ResolutionState{5, 3}.crosses() == 2);
}

TEST_CASE("cube of resolutions") {
  const auto ladder = cube(load("p3-ladder.json"));
  REQUIRE(ladder.states.size() == 8);
  CHECK(column(ladder, 0) == std::vector<unsigned>{3});
  CHECK(column(ladder, 1) == std::vector<unsigned>{2, 2, 2});
  CHECK(column(ladder, 2) == std::vector<unsigned>{1, 1, 1});
  CHECK(column(ladder, 3) == std::vector<unsigned>{1});
  CHECK(ladder.arrows.size() == 12);
  CHECK(ladder.total() == bracket_state_sum(load("p3-ladder.json")));

  const auto theta = cube(load("theta.json"));
  CHECK(theta.states.size() == 2);
  CHECK(theta.arrows.size() == 1);

  const auto c = cube(load("p3-c.json"));
  CHECK(c.states.size() == 8);
  CHECK(c.total() == poly("z^-2 - z^-1 + 1 + z^3"));
  for (const auto& [from, to] : c.arrows) {
    CHECK(std::popcount(from ^ to) == 1);
    CHECK((to & from) == from);
  }
}

TEST_CASE("cube exports") {
  const auto c = cube(load("theta.json"));
  const auto j = nlohmann::json::parse(export_cube(c, CubeFormat::kJson));
  REQUIRE(j["states"].size() == 2);
  CHECK(j["states"][0]["bits"] == "0");
  CHECK(j["states"][0]["circles"] == 2);
  CHECK(j["states"][1]["crosses"] == 1);
  CHECK(j["arrows"] == nlohmann::json::parse(R"([["0","1"]])"));
  const std::string dot = export_cube(c, CubeFormat::kDot);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("rankdir=LR") != std::string::npos);
  CHECK(export_cube(c, CubeFormat::kDot) == dot);
}

TEST_CASE("factorization over components") {
  const auto theta = load("theta.json");
  const auto ladder = load("p3-ladder.json");
  const auto tt = disjoint_union(theta, theta);
  CHECK(bracket_factored(tt) == poly("z^-2 + 1").pow(2));
  CHECK(bracket_state_sum(tt) == bracket_factored(tt));
  const auto lt = disjoint_union(ladder, theta);
  CHECK(bracket_state_sum(lt) == poly("z^-3 - z^2 + z^3 - z^4") * poly("z^-2 + 1"));
  CHECK(bracket_factored(lt) == bracket_state_sum(lt));
}

TEST_CASE("free circles multiply by the loop factor") {
  for (const char* name : {"theta.json", "p3-ladder.json", "k4.json"}) {
    const auto d = load(name);
    CHECK(bracket_state_sum(d.with_free_circles(2)) == bracket_state_sum(d) * loop_factor().pow(2));
  }
}

TEST_CASE("state-sum limit") {
  const auto d = load("p3-ladder.json");
  BracketOptions small;
  small.max_matching_edges = 2;
  CHECK_THROWS_AS(bracket_state_sum(d, small), LimitExceeded);
  small.max_matching_edges = 99;
  CHECK_THROWS_AS(bracket_state_sum(d, small), InvalidInput);
}

TEST_CASE("generated diagrams: oracle, mirror, factoring, threads, cube") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto d = generate({static_cast<unsigned>(4 + 2 * (seed % 5)), seed});
    CAPTURE(d.name());
    const LaurentPoly p = bracket_state_sum(d);
    CHECK(p == oracle::bracket(d));
    CHECK(p == bracket_state_sum(mirror(d)));
    CHECK(p == bracket_factored(d));
    BracketOptions parallel;
    parallel.threads = 4;
    CHECK(p == bracket_state_sum(d, parallel));
    CHECK(cube(d).total() == p);
  }
}

TEST_CASE("circle counts: at least one, and one bit flip changes them by at most one") {
  // Re-pairing four strand ends can merge, split, or reconnect a single circle.
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto d = generate({static_cast<unsigned>(2 + 2 * (seed % 6)), seed});
    CAPTURE(d.name());
    const StrandModel model = compile_strands(d);
    const unsigned k = static_cast<unsigned>(model.sites.size());
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
      const unsigned here = model.circle_count(s);
      CHECK(here >= 1);
      for (unsigned i = 0; i < k; ++i) {
        const unsigned there = model.circle_count(s ^ (std::uint64_t{1} << i));
        CHECK((here == there || here == there + 1 || there == here + 1));
      }
    }
  }
}

TEST_CASE("a bit flip can leave the circle count unchanged") {
  // The P3 bracket mixes exponent parities, which is impossible if every flip
  // moved the circle count by one.
  const auto d = load("p3-c.json");
  const LaurentPoly p = bracket_state_sum(d);
  bool even = false, odd = false;
  for (const auto& [e, c] : p.terms()) (e % 2 ? odd : even) = true;
  CHECK((even && odd));
  const StrandModel model = compile_strands(d);
  const unsigned k = static_cast<unsigned>(model.sites.size());
  bool unchanged = false;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s)
    for (unsigned i = 0; i < k; ++i)
      unchanged = unchanged || model.circle_count(s) == model.circle_count(s ^ (std::uint64_t{1} << i));
  CHECK(unchanged);
}
