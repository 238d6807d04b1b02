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
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "twofactor/errors.hpp"
#include "twofactor/harness.hpp"

using namespace twofactor;

namespace {

MatchedDiagram load(const char* name) { return load_diagram(oracle::fixture(name)); }

const CheckRecord* find(const VerificationReport& r, const std::string& check) {
  for (const auto& rec : r.records)
    if (rec.check == check) return &rec;
  return nullptr;
}

}  // namespace

TEST_CASE("generation starts from theta") {
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const auto d = generate({2, seed});
    CHECK(d.same_structure(load("theta.json")));
  }
  CHECK_THROWS_AS(generate({7, 0}), InvalidInput);
  CHECK_THROWS_AS(generate({0, 0}), InvalidInput);
}

TEST_CASE("generation is deterministic and grows by two vertices per expansion") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto a = generate({12, seed});
    const auto b = generate({12, seed});
    CHECK(a.same_structure(b));
    CHECK(a.name() == b.name());
    CHECK(to_json(a).dump() == to_json(b).dump());
    for (unsigned n = 2; n <= 16; n += 2) {
      const auto d = generate({n, seed});
      CHECK(d.vertices().size() == n);
      CHECK(d.edges().size() == 3 * n / 2);
    }
  }
  CHECK(!generate({12, 1}).same_structure(generate({12, 2})));
}

TEST_CASE("generated graphs are valid, spherical and bridgeless") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto d = generate({static_cast<unsigned>(6 + 2 * (seed % 6)), seed});
    CAPTURE(d.name());
    CHECK(validate(d).empty());
    CHECK(genus(d) == 0);
    CHECK(oracle::bridges(d).empty());
    CHECK(component_count(d) == 1);
  }
}

TEST_CASE("purpose-built constructions") {
  const auto theta = load("theta.json");
  const auto ladder = load("p3-ladder.json");
  const auto bubbled = insert_bubble(ladder, EdgeId{0});
  CHECK(validate(bubbled).empty());
  CHECK(bubbled.vertices().size() == 8);
  CHECK(detect_bubbles(bubbled).size() == 1);
  const auto joined = bridge_join(ladder, EdgeId{3}, theta, EdgeId{1});
  CHECK(validate(joined).empty());
  CHECK(find_bridges(joined).size() == 1);
  const auto both = disjoint_union(ladder, theta);
  CHECK(component_count(both) == 2);
  CHECK_THROWS_AS(insert_bubble(theta, EdgeId{1}), InvalidInput);
  CHECK_THROWS_AS(bridge_join(theta, EdgeId{0}, theta, EdgeId{1}), InvalidInput);
}

TEST_CASE("verification of the P3 fixtures") {
  const auto ladder = verify_instance(load("p3-ladder.json"));
  CHECK(ladder.passed());
  const auto* count = find(ladder, "count_identity");
  REQUIRE(count);
  CHECK(count->detail["at_one"] == "0");
  CHECK(count->detail["formula"] == "0");
  CHECK(count->detail["enumerated"] == 0);

  const auto c = verify_instance(load("p3-c.json"));
  CHECK(c.passed());
  const auto* cc = find(c, "count_identity");
  REQUIRE(cc);
  CHECK(cc->detail["at_one"] == "2");
  CHECK(cc->detail["enumerated"] == 2);

  for (const char* check : {"count_identity", "odd_cycle_vanishing", "ih_relation", "bridge_vanishing",
                            "triangle_vanishing", "mirror_invariance", "factored_agreement",
                            "short_cycle_reduction", "tait_identity", "tait_decomposition",
                            "tait_positivity"})
    CHECK(find(c, check) != nullptr);
}

TEST_CASE("verification with every matching") {
  VerifyOptions options;
  options.all_matchings = true;
  const auto r = verify_instance(load("p3-ladder.json"), options);
  CHECK(r.passed());
  std::set<std::string> instances;
  for (const auto& rec : r.records) instances.insert(rec.instance);
  CHECK(instances.size() == 5);  // four matchings plus the graph-level checks
}

TEST_CASE("failing records carry a replayable witness") {
  // A hand-broken record must serialize its witness; passing ones must not.
  VerificationReport r;
  CheckRecord ok{"demo", "x", true, true, {{"v", 1}}, {}};
  CheckRecord bad{"demo", "y", false, true, {{"v", 2}}, {{"diagram", to_json(load("theta.json"))}}};
  r.records = {ok, bad};
  CHECK(r.failures() == 1);
  std::istringstream lines(r.to_jsonl());
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(!nlohmann::json::parse(first).contains("witness"));
  const auto witness = nlohmann::json::parse(second)["witness"];
  CHECK(diagram_from_json(witness["diagram"]).same_structure(load("theta.json")));
  CHECK(r.summary().find("demo") != std::string::npos);
}

TEST_CASE("bridged and bubbled constructions verify") {
  const auto theta = load("theta.json");
  const auto ladder = load("p3-ladder.json");
  std::vector<MatchedDiagram> built{
      bridge_join(theta, EdgeId{1}, theta, EdgeId{1}),
      bridge_join(ladder, EdgeId{3}, theta, EdgeId{2}),
      bridge_join(load("k4.json"), EdgeId{1}, load("p3-c.json"), EdgeId{1}),
      insert_bubble(theta, EdgeId{0}),
      insert_bubble(load("p3-c.json"), EdgeId{4}),
      insert_bubble(insert_bubble(ladder, EdgeId{1}), EdgeId{2})};
  for (const auto& d : built) {
    CAPTURE(d.name());
    const auto r = verify_instance(d);
    CHECK(r.passed());
  }
  const auto bridged = verify_instance(built[0]);
  const auto* bridge = find(bridged, "bridge_vanishing");
  REQUIRE(bridge);
  CHECK(bridge->triggered);
}

TEST_CASE("corpus specs cover the size range in order") {
  CorpusSpec spec;
  spec.count = 10;
  const auto specs = corpus_specs(spec);
  REQUIRE(specs.size() == 10);
  CHECK(specs[0].vertices == 6);
  CHECK(specs[4].vertices == 14);
  CHECK(specs[5].vertices == 6);
  CHECK(specs[9].seed == 9);
  spec.min_vertices = 5;
  CHECK_THROWS_AS(corpus_specs(spec), InvalidInput);
}

TEST_CASE("corpus verification is thread-count independent") {
  CorpusSpec spec;
  spec.count = 12;
  spec.max_vertices = 10;
  const auto serial = verify_corpus(spec);
  spec.threads = 4;
  const auto parallel = verify_corpus(spec);
  CHECK(serial.passed());
  CHECK(serial.to_jsonl() == parallel.to_jsonl());
  CHECK(serial.summary() == parallel.summary());
}
