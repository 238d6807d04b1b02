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

#include "twofactor/bracket.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "twofactor/errors.hpp"

namespace twofactor {

LocalStrands local_strands(const MatchedDiagram& diagram, EdgeId e) {
  const Edge* edge = diagram.find_edge(e);
  if (!edge) throw InvalidInput("no edge " + std::to_string(e.value));
  if (!edge->matching) throw InvalidInput("edge " + std::to_string(e.value) + " is not a matching edge");
  LocalStrands s;
  s.eu = edge->ends[0];
  s.ev = edge->ends[1];
  if (diagram.vertex_of(s.eu).id == diagram.vertex_of(s.ev).id)
    throw InvalidInput("matching edge " + std::to_string(e.value) + " is a loop");
  s.a = diagram.next_ccw(s.eu);
  s.b = diagram.next_ccw(s.a);
  s.c = diagram.next_ccw(s.ev);
  s.d = diagram.next_ccw(s.c);
  return s;
}

std::array<StrandPair, 2> resolution_pairing(const MatchedDiagram& diagram, EdgeId e,
                                             Resolution choice) {
  LocalStrands s = local_strands(diagram, e);
  if (choice == Resolution::kOpen) return {StrandPair{s.a, s.d}, StrandPair{s.b, s.c}};
  return {StrandPair{s.a, s.c}, StrandPair{s.b, s.d}};
}

unsigned ResolutionState::crosses() const noexcept {
  return static_cast<unsigned>(std::popcount(bits));
}

std::string ResolutionState::to_string() const {
  std::string out(width, '0');
  for (unsigned i = 0; i < width; ++i)
    if (cross(i)) out[i] = '1';
  return out;
}

unsigned StrandModel::circle_count(std::uint64_t bits) const {
  const std::size_t n = edge_partner.size();
  std::vector<std::uint32_t> resolved(n);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto& [a, b, c, d] = sites[i].strands;
    if ((bits >> i) & 1u) {
      resolved[a] = c, resolved[c] = a;
      resolved[b] = d, resolved[d] = b;
    } else {
      resolved[a] = d, resolved[d] = a;
      resolved[b] = c, resolved[c] = b;
    }
  }
  std::vector<char> seen(n, 0);
  unsigned circles = free_circles;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++circles;
    std::uint32_t x = start;
    do {
      seen[x] = 1;
      std::uint32_t y = edge_partner[x];
      seen[y] = 1;
      x = resolved[y];
    } while (x != start);
  }
  return circles;
}

StrandModel compile_strands(const MatchedDiagram& diagram) {
  require_valid(diagram);
  StrandModel model;
  model.free_circles = diagram.free_circles();
  std::unordered_map<HalfEdgeId, std::uint32_t> strand_of;
  auto strand = [&](HalfEdgeId h) {
    auto [it, inserted] = strand_of.try_emplace(h, static_cast<std::uint32_t>(strand_of.size()));
    return it->second;
  };
  for (EdgeId e : diagram.matching_edges()) {
    LocalStrands s = local_strands(diagram, e);
    model.sites.push_back({e, {strand(s.a), strand(s.b), strand(s.c), strand(s.d)}});
  }
  model.edge_partner.assign(strand_of.size(), 0);
  for (const Edge& e : diagram.edges()) {
    if (e.matching) continue;
    std::uint32_t x = strand_of.at(e.ends[0]);
    std::uint32_t y = strand_of.at(e.ends[1]);
    model.edge_partner[x] = y;
    model.edge_partner[y] = x;
  }
  return model;
}

unsigned circle_count(const MatchedDiagram& diagram, const ResolutionState& state) {
  StrandModel model = compile_strands(diagram);
  if (state.width != model.sites.size())
    throw InvalidInput("state width " + std::to_string(state.width) + " does not match " +
                       std::to_string(model.sites.size()) + " matching edges");
  return model.circle_count(state.bits);
}

LaurentPoly state_term(unsigned crosses, unsigned circles) {
  LaurentPoly sign = LaurentPoly::monomial(crosses % 2 ? -1 : 1, static_cast<int>(crosses));
  return sign * loop_factor().pow(circles);
}

namespace {

void check_limit(std::size_t k, const BracketOptions& options) {
  if (options.max_matching_edges > 62)
    throw InvalidInput("max_matching_edges must be at most 62, got " +
                       std::to_string(options.max_matching_edges));
  if (k > options.max_matching_edges)
    throw LimitExceeded("state sum over " + std::to_string(k) +
                        " matching edges exceeds the limit of " +
                        std::to_string(options.max_matching_edges));
}

// histogram[crosses * stride + circles] counts states.
std::vector<std::uint64_t> state_histogram(const StrandModel& model, unsigned threads,
                                           std::size_t stride) {
  const std::size_t k = model.sites.size();
  const std::uint64_t total = std::uint64_t{1} << k;
  const std::size_t cells = (k + 1) * stride;

  auto run = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& hist) {
    hist.assign(cells, 0);
    for (std::uint64_t s = begin; s < end; ++s)
      ++hist[std::popcount(s) * stride + model.circle_count(s)];
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t workers = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total >> 10));
  std::vector<std::vector<std::uint64_t>> partial(workers);
  if (workers == 1) {
    run(0, total, partial[0]);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      std::uint64_t begin = total * w / workers;
      std::uint64_t end = total * (w + 1) / workers;
      pool.emplace_back([&, begin, end, w] { run(begin, end, partial[w]); });
    }
  }
  std::vector<std::uint64_t> hist(cells, 0);
  for (const auto& p : partial)
    for (std::size_t i = 0; i < cells; ++i) hist[i] += p[i];
  return hist;
}

}  // namespace

LaurentPoly bracket_state_sum(const StrandModel& model, const BracketOptions& options) {
  const std::size_t k = model.sites.size();
  check_limit(k, options);
  // Every circle contains at least one strand pair.
  const std::size_t stride = model.edge_partner.size() / 2 + model.free_circles + 1;
  auto hist = state_histogram(model, options.threads, stride);

  std::vector<LaurentPoly> circle_powers(stride);
  circle_powers[0] = LaurentPoly(1);
  for (std::size_t l = 1; l < stride; ++l) circle_powers[l] = circle_powers[l - 1] * loop_factor();

  LaurentPoly sum;
  for (std::size_t c = 0; c <= k; ++c) {
    LaurentPoly column;
    for (std::size_t l = 0; l < stride; ++l) {
      std::uint64_t count = hist[c * stride + l];
      if (count) column += circle_powers[l].scaled(BigInt(count));
    }
    sum += column * LaurentPoly::monomial(c % 2 ? -1 : 1, static_cast<int>(c));
  }
  return sum;
}

LaurentPoly bracket_state_sum(const MatchedDiagram& diagram, const BracketOptions& options) {
  require_valid(diagram);
  check_limit(diagram.matching_edges().size(), options);
  return bracket_state_sum(compile_strands(diagram), options);
}

LaurentPoly bracket_factored(const MatchedDiagram& diagram, const BracketOptions& options) {
  LaurentPoly product = loop_factor().pow(diagram.free_circles());
  for (const MatchedDiagram& part : connected_components(diagram))
    product *= bracket_state_sum(part, options);
  return product;
}

LaurentPoly CubeOfResolutions::total() const {
  LaurentPoly sum;
  for (const State& s : states) sum += s.term;
  return sum;
}

CubeOfResolutions cube(const MatchedDiagram& diagram, const BracketOptions& options) {
  require_valid(diagram);
  StrandModel model = compile_strands(diagram);
  const unsigned k = static_cast<unsigned>(model.sites.size());
  check_limit(k, options);
  CubeOfResolutions out;
  for (const auto& site : model.sites) out.matching_order.push_back(site.edge);
  const std::uint64_t total = std::uint64_t{1} << k;
  out.states.reserve(total);
  for (std::uint64_t s = 0; s < total; ++s) {
    CubeOfResolutions::State st;
    st.state = {s, k};
    st.crosses = st.state.crosses();
    st.circles = model.circle_count(s);
    st.term = state_term(st.crosses, st.circles);
    out.states.push_back(std::move(st));
  }
  for (std::uint64_t s = 0; s < total; ++s)
    for (unsigned i = 0; i < k; ++i)
      if (!((s >> i) & 1u)) out.arrows.emplace_back(s, s | (std::uint64_t{1} << i));
  return out;
}

std::string export_cube(const CubeOfResolutions& c, CubeFormat format) {
  const unsigned k = static_cast<unsigned>(c.matching_order.size());
  auto bits = [k](std::uint64_t s) { return ResolutionState{s, k}.to_string(); };

  if (format == CubeFormat::kJson) {
    nlohmann::json states = nlohmann::json::array();
    for (const auto& s : c.states) {
      states.push_back({{"bits", s.state.to_string()},
                        {"crosses", s.crosses},
                        {"circles", s.circles},
                        {"term", s.term.to_text()}});
    }
    nlohmann::json arrows = nlohmann::json::array();
    for (const auto& [from, to] : c.arrows) arrows.push_back({bits(from), bits(to)});
    nlohmann::json j;
    j["states"] = std::move(states);
    j["arrows"] = std::move(arrows);
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "digraph cube {\n  rankdir=LR;\n  node [shape=box];\n";
  out << "  // matching edges by bit:";
  for (EdgeId e : c.matching_order) out << ' ' << e.value;
  out << "\n";
  for (unsigned col = 0; col <= k; ++col) {
    out << "  subgraph column_" << col << " {\n    rank=same;\n";
    for (const auto& s : c.states) {
      if (s.crosses != col) continue;
      out << "    \"" << s.state.to_string() << "\" [label=\"" << s.state.to_string()
          << "\\ncircles=" << s.circles << "\\n" << s.term.to_text() << "\"];\n";
    }
    out << "  }\n";
  }
  for (const auto& [from, to] : c.arrows)
    out << "  \"" << bits(from) << "\" -> \"" << bits(to) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace twofactor
