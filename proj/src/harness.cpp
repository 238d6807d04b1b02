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

#include "twofactor/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "twofactor/errors.hpp"

namespace twofactor {

namespace {

// Mutable view of a diagram used while building new ones.
struct Builder {
  std::string name;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::uint32_t free_circles = 0;
  std::uint32_t next_vertex = 0;
  std::uint32_t next_edge = 0;
  std::uint32_t next_half = 0;

  explicit Builder(const MatchedDiagram& d)
      : name(d.name()),
        vertices(d.vertices()),
        edges(d.edges()),
        free_circles(d.free_circles()),
        next_vertex(d.next_vertex_id()),
        next_edge(d.next_edge_id()),
        next_half(d.next_half_edge_id()) {}

  HalfEdgeId half() { return HalfEdgeId{next_half++}; }
  VertexId vertex(std::array<HalfEdgeId, 3> rotation) {
    VertexId id{next_vertex++};
    vertices.push_back({id, rotation});
    return id;
  }
  EdgeId edge(HalfEdgeId x, HalfEdgeId y, bool matching = false) {
    EdgeId id{next_edge++};
    edges.push_back({id, {x, y}, matching});
    return id;
  }
  Edge& edge_ref(EdgeId id) {
    auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.id == id; });
    if (it == edges.end()) throw InvalidInput("no edge " + std::to_string(id.value));
    return *it;
  }
  // Splits the edge of dart h = (w -> w2) with a new vertex s whose rotation
  // is (toward w, new, toward w2). Returns the new half-edge at s.
  HalfEdgeId subdivide(const MatchedDiagram& d, HalfEdgeId h) {
    const HalfEdgeId t = d.twin(h);
    const HalfEdgeId to_w = half(), fresh = half(), to_w2 = half();
    Edge& e = edge_ref(d.edge_of(h).id);
    const bool matching = e.matching;
    e.ends = {h, to_w};
    e.matching = matching;
    edge(to_w2, t, false);
    vertex({to_w, fresh, to_w2});
    return fresh;
  }
  MatchedDiagram build() const { return MatchedDiagram(name, vertices, edges, free_circles); }
};

// Face expansion on dart positions i <= j of one face walk.
MatchedDiagram expand(const MatchedDiagram& d, const FaceWalk& walk, std::size_t i, std::size_t j) {
  Builder b(d);
  const HalfEdgeId h1 = walk[i], h2 = walk[j];
  if (h1 == h2) {
    // Two new vertices on the same side: s nearer the tail, r nearer the head.
    const HalfEdgeId t = d.twin(h1);
    const HalfEdgeId sa = b.half(), sn = b.half(), sb = b.half();
    const HalfEdgeId ra = b.half(), rn = b.half(), rb = b.half();
    Edge& e = b.edge_ref(d.edge_of(h1).id);
    e.ends = {h1, sa};
    b.edge(sb, ra);
    b.edge(rb, t);
    b.edge(sn, rn);
    b.vertex({sa, sn, sb});
    b.vertex({ra, rn, rb});
  } else {
    const HalfEdgeId x = b.subdivide(d, h1);
    // Re-index so the second subdivision sees the first.
    const MatchedDiagram mid = b.build();
    Builder b2(mid);
    const HalfEdgeId y = b2.subdivide(mid, h2);
    b2.edge(x, y);
    return b2.build();
  }
  return b.build();
}

std::string instance_name(unsigned vertices, std::uint64_t seed) {
  return "gen-n" + std::to_string(vertices) + "-s" + std::to_string(seed);
}

}  // namespace

MatchedDiagram theta_diagram() {
  std::vector<Vertex> vertices{{VertexId{0}, {HalfEdgeId{4}, HalfEdgeId{0}, HalfEdgeId{2}}},
                               {VertexId{1}, {HalfEdgeId{3}, HalfEdgeId{1}, HalfEdgeId{5}}}};
  std::vector<Edge> edges{{EdgeId{0}, {HalfEdgeId{0}, HalfEdgeId{1}}, true},
                          {EdgeId{1}, {HalfEdgeId{2}, HalfEdgeId{3}}, false},
                          {EdgeId{2}, {HalfEdgeId{4}, HalfEdgeId{5}}, false}};
  return MatchedDiagram("theta", std::move(vertices), std::move(edges));
}

MatchedDiagram generate(const GenSpec& spec) {
  if (spec.vertices < 2 || spec.vertices % 2)
    throw InvalidInput("vertex count must be even and at least 2, got " + std::to_string(spec.vertices));
  // All three matchings of theta are equivalent; keep the canonical one.
  if (spec.vertices == 2) return theta_diagram().renamed(instance_name(spec.vertices, spec.seed));
  std::mt19937_64 rng(spec.seed);
  MatchedDiagram d = theta_diagram().with_matching({});
  while (d.vertices().size() < spec.vertices) {
    const auto walks = embedding_faces(d);
    const FaceWalk& walk = walks[std::uniform_int_distribution<std::size_t>(0, walks.size() - 1)(rng)];
    std::uniform_int_distribution<std::size_t> pick(0, walk.size() - 1);
    std::size_t i = pick(rng), j = pick(rng);
    if (i > j) std::swap(i, j);
    d = expand(d, walk, i, j);
  }
  const auto matchings = enumerate_perfect_matchings(d);
  if (matchings.empty())
    throw Error("generator produced a graph without a perfect matching");
  const auto& m = matchings[std::uniform_int_distribution<std::size_t>(0, matchings.size() - 1)(rng)];
  return d.with_matching(m).renamed(instance_name(spec.vertices, spec.seed));
}

MatchedDiagram insert_bubble(const MatchedDiagram& d, EdgeId e) {
  const Edge* edge = d.find_edge(e);
  if (!edge || !edge->matching)
    throw InvalidInput("edge " + std::to_string(e.value) + " is not a matching edge");
  Builder b(d);
  const HalfEdgeId hv = edge->ends[1];
  const HalfEdgeId xe = b.half(), xp = b.half(), xq = b.half();
  const HalfEdgeId ye = b.half(), yq = b.half(), yp = b.half();
  b.edge_ref(e).ends = {edge->ends[0], xe};
  b.vertex({xe, xp, xq});
  b.vertex({ye, yq, yp});
  b.edge(xp, yp);
  b.edge(xq, yq);
  b.edge(ye, hv, true);
  b.name = d.name() + "+bubble" + std::to_string(e.value);
  return b.build();
}

MatchedDiagram disjoint_union(const MatchedDiagram& a, const MatchedDiagram& b) {
  const std::uint32_t dv = a.next_vertex_id(), de = a.next_edge_id(), dh = a.next_half_edge_id();
  std::vector<Vertex> vertices = a.vertices();
  std::vector<Edge> edges = a.edges();
  for (Vertex v : b.vertices()) {
    v.id.value += dv;
    for (auto& h : v.rotation) h.value += dh;
    vertices.push_back(v);
  }
  for (Edge e : b.edges()) {
    e.id.value += de;
    for (auto& h : e.ends) h.value += dh;
    edges.push_back(e);
  }
  return MatchedDiagram(a.name() + "+" + b.name(), std::move(vertices), std::move(edges),
                        a.free_circles() + b.free_circles());
}

MatchedDiagram bridge_join(const MatchedDiagram& a, EdgeId ea, const MatchedDiagram& b, EdgeId eb) {
  for (const auto& [g, e] : {std::pair{&a, ea}, std::pair{&b, eb}}) {
    const Edge* edge = g->find_edge(e);
    if (!edge || edge->matching)
      throw InvalidInput("edge " + std::to_string(e.value) + " of '" + g->name() +
                         "' is not a non-matching edge");
  }
  const MatchedDiagram u = disjoint_union(a, b);
  const EdgeId eb_shifted{eb.value + a.next_edge_id()};
  Builder b1(u);
  const HalfEdgeId x = b1.subdivide(u, u.find_edge(ea)->ends[0]);
  const MatchedDiagram mid = b1.build();
  Builder b2(mid);
  const HalfEdgeId y = b2.subdivide(mid, mid.find_edge(eb_shifted)->ends[0]);
  b2.edge(x, y, true);
  b2.name = a.name() + "~" + b.name();
  return b2.build();
}

// --- reports -----------------------------------------------------------------

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.passed; }));
}

void VerificationReport::append(const VerificationReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

std::string VerificationReport::to_jsonl() const {
  std::string out;
  for (const CheckRecord& r : records) {
    nlohmann::json j{{"check", r.check},
                     {"instance", r.instance},
                     {"pass", r.passed},
                     {"triggered", r.triggered},
                     {"detail", r.detail}};
    if (!r.passed) j["witness"] = r.witness;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string VerificationReport::summary() const {
  struct Tally {
    std::size_t passed = 0, failed = 0, vacuous = 0;
  };
  std::map<std::string, Tally> by_check;
  std::set<std::string> instances;
  for (const CheckRecord& r : records) {
    Tally& t = by_check[r.check];
    instances.insert(r.instance);
    if (!r.passed)
      ++t.failed;
    else if (!r.triggered)
      ++t.vacuous;
    else
      ++t.passed;
  }
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %9s %9s %9s\n", "check", "passed", "failed", "vacuous");
  os << line;
  for (const auto& [name, t] : by_check) {
    std::snprintf(line, sizeof line, "%-24s %9zu %9zu %9zu\n", name.c_str(), t.passed, t.failed, t.vacuous);
    os << line;
  }
  os << "instances: " << instances.size() << ", records: " << records.size()
     << ", failures: " << failures() << '\n';
  return os.str();
}

// --- verification --------------------------------------------------------------

namespace {

class Recorder {
 public:
  explicit Recorder(const VerifyOptions& options) : options_(options) {}

  void add(const std::string& check, const MatchedDiagram& subject, CheckOutcome outcome) {
    CheckRecord r;
    r.check = check;
    r.instance = subject.name();
    r.passed = outcome.passed;
    r.triggered = outcome.triggered;
    r.detail = std::move(outcome.detail);
    if (!r.passed) r.witness = {{"diagram", to_json(subject)}, {"params", options_.params}};
    report_.records.push_back(std::move(r));
  }
  // Wraps a check body so that an exception becomes a recorded failure.
  template <class F>
  void run(const std::string& check, const MatchedDiagram& subject, F&& body) {
    try {
      add(check, subject, body());
    } catch (const std::exception& ex) {
      add(check, subject, {false, true, {{"error", ex.what()}}});
    }
  }
  VerificationReport take() { return std::move(report_); }

 private:
  const VerifyOptions& options_;
  VerificationReport report_;
};

std::string text(const BigInt& x) { return x.str(); }

void verify_matching(const MatchedDiagram& d, const VerifyOptions& options, Recorder& rec,
                     bool connected, bool bridgeless) {
  const LaurentPoly poly = bracket_state_sum(d, options.bracket);
  const BigInt at_one = poly.eval_at_one();
  const BigInt formula = two_factor_count_formula(d);

  rec.run("count_identity", d, [&] {
    CheckOutcome out;
    out.detail = {{"bracket", poly.to_text()}, {"at_one", text(at_one)}, {"formula", text(formula)}};
    out.passed = at_one == formula;
    if (d.free_circles() == 0) {
      try {
        const auto factors = two_factor_enumerate(d, options.limits);
        out.detail["enumerated"] = factors.size();
        out.passed = out.passed && BigInt(factors.size()) == formula;
      } catch (const LimitExceeded&) {
        out.detail["enumerated"] = "skipped";
      }
    }
    return out;
  });

  rec.run("odd_cycle_vanishing", d, [&] {
    const ComplementCycles cc = complement_cycles(d);
    const bool odd = std::any_of(cc.cycles.begin(), cc.cycles.end(),
                                 [](const ComplementCycle& c) { return c.length() % 2 == 1; });
    CheckOutcome out;
    out.triggered = odd;
    out.passed = !odd || at_one == 0;
    out.detail = {{"odd_cycle", odd}, {"at_one", text(at_one)}};
    return out;
  });

  for (EdgeId e : d.matching_edges()) {
    rec.run("ih_relation", d, [&] {
      CheckOutcome out = check_ih_relation(d, e, options.bracket);
      out.detail["edge"] = e.value;
      return out;
    });
  }

  for (const Bubble& bubble : detect_bubbles(d))
    rec.run("bubble_relation", d, [&] { return check_bubble(d, bubble, options.bracket); });

  rec.run("bridge_vanishing", d, [&] { return check_bridge(d, options.bracket); });
  rec.run("triangle_vanishing", d, [&] { return check_triangle(d, options.bracket); });

  rec.run("mirror_invariance", d, [&] {
    const LaurentPoly mirrored = bracket_state_sum(mirror(d), options.bracket);
    return CheckOutcome{mirrored == poly, true, {{"bracket", poly.to_text()}, {"mirror", mirrored.to_text()}}};
  });

  rec.run("factored_agreement", d, [&] {
    const LaurentPoly factored = bracket_factored(d, options.bracket);
    return CheckOutcome{factored == poly, true, {{"bracket", poly.to_text()}, {"factored", factored.to_text()}}};
  });

  rec.run("short_cycle_reduction", d, [&] {
    CheckOutcome out;
    out.triggered = connected && bridgeless && d.free_circles() == 0;
    if (!out.triggered) return out;
    const Reduction r = reduce_to_short_cycle(d);
    const MatchedDiagram replayed = replay(d, r.moves);
    std::size_t shortest = 0;
    for (const auto& c : complement_cycles(r.result).cycles)
      if (shortest == 0 || c.length() < shortest) shortest = c.length();
    out.passed = shortest > 0 && shortest <= 3 && replayed.same_structure(r.result) &&
                 replayed.name() == r.result.name();
    out.detail = {{"moves", moves_to_json(r.moves)}, {"shortest_cycle", shortest}};
    return out;
  });
}

}  // namespace

VerificationReport verify_instance(const MatchedDiagram& d, const VerifyOptions& options) {
  require_valid(d);
  Recorder rec(options);
  const bool connected = component_count(d) == 1 && d.free_circles() == 0;
  const bool bridgeless = find_bridges(d).empty();

  std::vector<MatchedDiagram> subjects;
  std::vector<PerfectMatching> matchings;
  if (connected) matchings = enumerate_perfect_matchings(d, options.limits);
  if (options.all_matchings && connected) {
    for (std::size_t i = 0; i < matchings.size(); ++i)
      subjects.push_back(d.with_matching(matchings[i]).renamed(d.name() + "@m" + std::to_string(i)));
  } else {
    subjects.push_back(d);
  }
  for (const MatchedDiagram& s : subjects) verify_matching(s, options, rec, connected, bridgeless);

  if (connected) {
    // Per-graph checks against brute-force colourings.
    const LaurentPoly tait = tait_polynomial(d, options.bracket, options.limits);
    std::map<std::set<EdgeId>, std::uint64_t> by_class;
    std::uint64_t colorings = 0;
    for_each_tait_coloring(d, [&](const EdgeColoring& c) {
      ++colorings;
      std::set<EdgeId> zero;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] == 0) zero.insert(d.edges()[i].id);
      ++by_class[zero];
    });
    const BigInt tait_one = tait.eval_at_one();

    rec.run("tait_identity", d, [&] {
      return CheckOutcome{tait_one == BigInt(colorings), true,
                          {{"tait", tait.to_text()}, {"at_one", text(tait_one)}, {"colorings", colorings}}};
    });
    rec.run("tait_decomposition", d, [&] {
      CheckOutcome out;
      nlohmann::json rows = nlohmann::json::array();
      for (const PerfectMatching& m : matchings) {
        const BigInt value = bracket_state_sum(d.with_matching(m), options.bracket).eval_at_one();
        auto it = by_class.find(m);
        const std::uint64_t count = it == by_class.end() ? 0 : it->second;
        if (value != BigInt(count)) out.passed = false;
        rows.push_back({{"matching", edge_sets_to_json({m})[0]}, {"at_one", text(value)}, {"colorings", count}});
      }
      out.detail = {{"matchings", std::move(rows)}};
      return out;
    });
    rec.run("tait_positivity", d, [&] {
      CheckOutcome out;
      out.triggered = bridgeless;
      out.passed = !bridgeless || tait_one > 0;
      out.detail = {{"bridgeless", bridgeless}, {"at_one", text(tait_one)}};
      return out;
    });
  }
  return rec.take();
}

// --- corpus ----------------------------------------------------------------------

std::vector<GenSpec> corpus_specs(const CorpusSpec& spec) {
  if (spec.min_vertices < 2 || spec.min_vertices % 2 || spec.max_vertices < spec.min_vertices ||
      spec.max_vertices % 2)
    throw InvalidInput("corpus sizes must be even with 2 <= min <= max");
  const unsigned sizes = (spec.max_vertices - spec.min_vertices) / 2 + 1;
  std::vector<GenSpec> out;
  for (unsigned i = 0; i < spec.count; ++i) {
    const std::uint64_t seed = spec.seed + i;
    out.push_back({spec.min_vertices + 2 * static_cast<unsigned>(seed % sizes), seed, spec.policy});
  }
  return out;
}

std::vector<MatchedDiagram> generate_corpus(const CorpusSpec& spec) {
  std::vector<MatchedDiagram> out;
  for (const GenSpec& g : corpus_specs(spec)) out.push_back(generate(g));
  return out;
}

VerificationReport verify_corpus(const CorpusSpec& spec, const VerifyOptions& options) {
  const std::vector<GenSpec> specs = corpus_specs(spec);
  std::vector<VerificationReport> parts(specs.size());
  auto work = [&](std::size_t i) {
    VerifyOptions opts = options;
    opts.all_matchings = specs[i].policy == MatchingPolicy::kAll;
    opts.params = {{"vertices", specs[i].vertices},
                   {"seed", specs[i].seed},
                   {"policy", specs[i].policy == MatchingPolicy::kAll ? "all" : "random"}};
    try {
      parts[i] = verify_instance(generate(specs[i]), opts);
    } catch (const std::exception& ex) {
      CheckRecord r;
      r.check = "generate";
      r.instance = instance_name(specs[i].vertices, specs[i].seed);
      r.passed = false;
      r.detail = {{"error", ex.what()}};
      r.witness = {{"params", opts.params}};
      parts[i].records.push_back(std::move(r));
    }
  };
  unsigned threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, specs.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < specs.size(); i += threads) work(i);
      });
  }
  VerificationReport out;
  for (const auto& p : parts) out.append(p);
  return out;
}

std::string corpus_header(const CorpusSpec& spec) {
  return "# corpus seed=" + std::to_string(spec.seed) + " instances=" + std::to_string(spec.count) +
         " sizes=" + std::to_string(spec.min_vertices) + "-" + std::to_string(spec.max_vertices) +
         " matchings=" + (spec.policy == MatchingPolicy::kAll ? "all" : "random");
}

}  // namespace twofactor
