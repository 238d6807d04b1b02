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

#include "twofactor/factors.hpp"

#include <algorithm>

#include "twofactor/errors.hpp"

namespace twofactor {

namespace {

void require_embedding(const MatchedDiagram& d) {
  auto report = validate_embedding(d);
  if (!report.empty()) throw InvalidInput("invalid diagram '" + d.name() + "': " + report.front());
}

struct EdgeEnds {
  std::size_t u, v;
};

std::vector<EdgeEnds> edge_vertices(const MatchedDiagram& d) {
  std::vector<EdgeEnds> out;
  out.reserve(d.edges().size());
  for (const Edge& e : d.edges()) out.push_back({d.locate(e.ends[0])->vertex, d.locate(e.ends[1])->vertex});
  return out;
}

}  // namespace

BigInt two_factor_count_formula(const MatchedDiagram& d) {
  ComplementCycles cc = complement_cycles(d);
  for (const auto& c : cc.cycles)
    if (c.length() % 2) return 0;
  return BigInt(1) << (cc.cycles.size() + cc.free_circles);
}

std::vector<TwoFactor> two_factor_enumerate(const MatchedDiagram& d, const FactorLimits& limits) {
  require_valid(d);
  if (d.free_circles() != 0)
    throw InvalidInput("two-factor enumeration needs a diagram without free circles");
  auto ends = edge_vertices(d);
  std::vector<std::size_t> free_edges;
  std::vector<int> base_degree(d.vertices().size(), 0);
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    if (d.edges()[i].matching) {
      ++base_degree[ends[i].u];
      ++base_degree[ends[i].v];
    } else {
      free_edges.push_back(i);
    }
  }
  if (free_edges.size() > limits.max_enumeration_edges)
    throw LimitExceeded("two-factor enumeration over " + std::to_string(free_edges.size()) +
                        " non-matching edges exceeds the limit of " +
                        std::to_string(limits.max_enumeration_edges));

  std::vector<TwoFactor> out;
  const std::uint64_t subsets = std::uint64_t{1} << free_edges.size();
  std::vector<int> degree;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    degree = base_degree;
    bool ok = true;
    for (std::size_t j = 0; j < free_edges.size() && ok; ++j) {
      if (!((mask >> j) & 1u)) continue;
      const EdgeEnds& e = ends[free_edges[j]];
      if (++degree[e.u] > 2 || ++degree[e.v] > 2) ok = false;
    }
    if (!ok || !std::all_of(degree.begin(), degree.end(), [](int x) { return x == 2; })) continue;
    TwoFactor f;
    for (std::size_t i = 0; i < d.edges().size(); ++i)
      if (d.edges()[i].matching) f.insert(d.edges()[i].id);
    for (std::size_t j = 0; j < free_edges.size(); ++j)
      if ((mask >> j) & 1u) f.insert(d.edges()[free_edges[j]].id);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<PerfectMatching> enumerate_perfect_matchings(const MatchedDiagram& d,
                                                         const FactorLimits& limits) {
  require_embedding(d);
  const std::size_t n = d.vertices().size();
  auto ends = edge_vertices(d);
  // Non-loop incident edges per vertex, ascending edge index.
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (ends[i].u == ends[i].v) continue;
    incident[ends[i].u].push_back(i);
    incident[ends[i].v].push_back(i);
  }

  std::vector<PerfectMatching> out;
  std::vector<char> used(n, 0);
  std::vector<std::size_t> chosen;
  auto extend = [&](auto&& self) -> void {
    auto first_free = std::find(used.begin(), used.end(), 0);
    if (first_free == used.end()) {
      if (out.size() >= limits.max_matchings)
        throw LimitExceeded("more than " + std::to_string(limits.max_matchings) + " perfect matchings");
      PerfectMatching m;
      for (std::size_t i : chosen) m.insert(d.edges()[i].id);
      out.push_back(std::move(m));
      return;
    }
    std::size_t v = static_cast<std::size_t>(first_free - used.begin());
    for (std::size_t i : incident[v]) {
      std::size_t w = ends[i].u == v ? ends[i].v : ends[i].u;
      if (used[w]) continue;
      used[v] = used[w] = 1;
      chosen.push_back(i);
      self(self);
      chosen.pop_back();
      used[v] = used[w] = 0;
    }
  };
  extend(extend);
  return out;
}

LaurentPoly tait_polynomial(const MatchedDiagram& d, const BracketOptions& options,
                            const FactorLimits& limits) {
  require_embedding(d);
  if (component_count(d) != 1 || d.free_circles() != 0)
    throw InvalidInput("the planar Tait polynomial is defined for connected graphs only");
  LaurentPoly sum;
  for (const PerfectMatching& m : enumerate_perfect_matchings(d, limits))
    sum += bracket_state_sum(d.with_matching(m), options);
  return sum;
}

void for_each_tait_coloring(const MatchedDiagram& d,
                            const std::function<void(const EdgeColoring&)>& visit) {
  require_embedding(d);
  auto ends = edge_vertices(d);
  const std::size_t m = ends.size();
  std::vector<std::uint8_t> used(d.vertices().size(), 0);
  EdgeColoring coloring(m, 0);
  auto assign = [&](auto&& self, std::size_t i) -> void {
    if (i == m) {
      visit(coloring);
      return;
    }
    const auto [u, v] = ends[i];
    for (std::uint8_t c = 0; c < 3; ++c) {
      const std::uint8_t bit = static_cast<std::uint8_t>(1u << c);
      if ((used[u] & bit) || (used[v] & bit)) continue;
      if (u == v) continue;
      used[u] |= bit;
      used[v] |= bit;
      coloring[i] = c;
      self(self, i + 1);
      used[u] &= static_cast<std::uint8_t>(~bit);
      used[v] &= static_cast<std::uint8_t>(~bit);
    }
  };
  assign(assign, 0);
}

BigInt tait_colorings_count(const MatchedDiagram& d) {
  std::uint64_t count = 0;
  for_each_tait_coloring(d, [&](const EdgeColoring&) { ++count; });
  return BigInt(count);
}

nlohmann::json edge_sets_to_json(const std::vector<std::set<EdgeId>>& sets) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : sets) {
    nlohmann::json ids = nlohmann::json::array();
    for (EdgeId e : s) ids.push_back(e.value);
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace twofactor
