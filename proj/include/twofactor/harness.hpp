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

#include <cstdint>
#include <string>
#include <vector>

#include "twofactor/bracket.hpp"
#include "twofactor/factors.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/ihmoves.hpp"

namespace twofactor {

enum class MatchingPolicy { kRandom, kAll };

struct GenSpec {
  unsigned vertices = 2;
  std::uint64_t seed = 0;
  MatchingPolicy policy = MatchingPolicy::kRandom;
};

/// The theta graph with edge 0 as its matching.
MatchedDiagram theta_diagram();

// Grows a planar cubic graph from theta by face expansions: pick a face, two
// edge-sides on it (possibly the same side twice), subdivide both and join
// the new vertices across the face. Then installs a perfect matching drawn
// uniformly from all of them. Deterministic in (vertices, seed).
MatchedDiagram generate(const GenSpec& spec);

// Purpose-built instances.

/// Replaces matching edge e by e, a bigon of two new non-matching edges, and
/// a new matching edge.
MatchedDiagram insert_bubble(const MatchedDiagram& d, EdgeId e);
/// Both diagrams side by side; ids of `b` are shifted past those of `a`.
MatchedDiagram disjoint_union(const MatchedDiagram& a, const MatchedDiagram& b);
/// Subdivides non-matching edge ea of a and eb of b and joins the two new
/// vertices by a matching edge, which is then a bridge.
MatchedDiagram bridge_join(const MatchedDiagram& a, EdgeId ea, const MatchedDiagram& b, EdgeId eb);

struct CheckRecord {
  std::string check;
  std::string instance;
  bool passed = true;
  bool triggered = true;
  nlohmann::json detail;
  /// Diagram and parameters, filled in on failure only.
  nlohmann::json witness;
};

struct VerificationReport {
  std::vector<CheckRecord> records;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  void append(const VerificationReport& other);
  /// One JSON object per line.
  std::string to_jsonl() const;
  /// Per-check table of passed / failed / vacuous counts.
  std::string summary() const;
};

struct VerifyOptions {
  BracketOptions bracket;
  FactorLimits limits;
  /// Run the per-matching checks for every perfect matching, not only the
  /// flagged one.
  bool all_matchings = false;
  /// Attached to failure witnesses.
  nlohmann::json params = nlohmann::json::object();
};

VerificationReport verify_instance(const MatchedDiagram& d, const VerifyOptions& options = {});

struct CorpusSpec {
  unsigned count = 200;
  unsigned min_vertices = 6;
  unsigned max_vertices = 14;
  std::uint64_t seed = 0;
  MatchingPolicy policy = MatchingPolicy::kAll;
  unsigned threads = 1;
};

/// Instance i uses seed + i and cycles through the even sizes in range.
std::vector<GenSpec> corpus_specs(const CorpusSpec& spec);
std::vector<MatchedDiagram> generate_corpus(const CorpusSpec& spec);
VerificationReport verify_corpus(const CorpusSpec& spec, const VerifyOptions& options = {});
std::string corpus_header(const CorpusSpec& spec);

}  // namespace twofactor
