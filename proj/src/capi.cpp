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

#include "twofactor/twofactor.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "twofactor/errors.hpp"
#include "twofactor/harness.hpp"

struct tf_context {
  twofactor::BracketOptions bracket;
  twofactor::FactorLimits limits;
  std::string last_error;
};

struct tf_diagram {
  twofactor::MatchedDiagram value;
};

namespace {

using namespace twofactor;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tf_diagram* wrap(MatchedDiagram d) { return new tf_diagram{std::move(d)}; }

// Runs `body`, translating exceptions into status codes and the context's
// error message.
template <class F>
tf_status guarded(tf_context* ctx, F&& body) {
  if (!ctx) return TF_INVALID_INPUT;
  ctx->last_error.clear();
  try {
    return body();
  } catch (const InvalidInput& e) {
    ctx->last_error = e.what();
    return TF_INVALID_INPUT;
  } catch (const nlohmann::json::exception& e) {
    ctx->last_error = std::string("malformed JSON: ") + e.what();
    return TF_INVALID_INPUT;
  } catch (const LimitExceeded& e) {
    ctx->last_error = e.what();
    return TF_LIMIT_EXCEEDED;
  } catch (const SearchExhausted& e) {
    ctx->last_error = e.what();
    return TF_CHECK_FAILED;
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return TF_LIMIT_EXCEEDED;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return TF_INTERNAL;
  } catch (...) {
    ctx->last_error = "unknown error";
    return TF_INTERNAL;
  }
}

#define TF_REQUIRE(cond, message)       \
  do {                                  \
    if (!(cond)) throw InvalidInput(message); \
  } while (0)

const MatchedDiagram& get(const tf_diagram* d) {
  TF_REQUIRE(d, "null diagram");
  return d->value;
}

nlohmann::json face_table(const MatchedDiagram& d) {
  const auto walks = faces(d);
  nlohmann::json rows = nlohmann::json::array();
  for (const FaceLabel& label : classify_faces(d)) {
    rows.push_back({{"face", label.face},
                    {"length", walks[label.face].size()},
                    {"matching", label.matching},
                    {"unmatched", label.unmatched_vertices},
                    {"reducible", is_reducible_face(label)}});
  }
  return rows;
}

std::string pairing_text(const std::array<std::pair<int, int>, 3>& pairing) {
  std::string out;
  for (const auto& [p, q] : pairing) {
    if (!out.empty()) out += ' ';
    out += std::to_string(p) + std::to_string(q);
  }
  return out;
}

std::string columns_text(const std::array<std::vector<unsigned>, 4>& columns) {
  std::string out;
  for (const auto& column : columns) {
    out += " |";
    for (unsigned c : column) out += ' ' + std::to_string(c);
  }
  return out;
}

}  // namespace

extern "C" {

const char* tf_version(void) { return "1.0.0"; }

const char* tf_status_name(tf_status status) {
  switch (status) {
    case TF_OK: return "ok";
    case TF_INVALID_INPUT: return "invalid input";
    case TF_CHECK_FAILED: return "check failed";
    case TF_LIMIT_EXCEEDED: return "limit exceeded";
    case TF_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tf_context* tf_context_new(void) { return new (std::nothrow) tf_context(); }
void tf_context_free(tf_context* ctx) { delete ctx; }
const char* tf_last_error(const tf_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }
void tf_string_free(char* s) { std::free(s); }

tf_status tf_context_set_threads(tf_context* ctx, unsigned threads) {
  return guarded(ctx, [&] {
    ctx->bracket.threads = threads;
    return TF_OK;
  });
}

tf_status tf_context_set_max_matching_edges(tf_context* ctx, unsigned k) {
  return guarded(ctx, [&] {
    TF_REQUIRE(k <= 62, "matching-edge limit must be at most 62");
    ctx->bracket.max_matching_edges = k;
    return TF_OK;
  });
}

tf_status tf_context_set_max_enumeration_edges(tf_context* ctx, unsigned m) {
  return guarded(ctx, [&] {
    TF_REQUIRE(m <= 40, "enumeration limit must be at most 40");
    ctx->limits.max_enumeration_edges = m;
    return TF_OK;
  });
}

tf_status tf_diagram_from_json(tf_context* ctx, const char* json, tf_diagram** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(json && out, "null argument");
    *out = wrap(diagram_from_json(nlohmann::json::parse(json)));
    return TF_OK;
  });
}

tf_status tf_diagram_load(tf_context* ctx, const char* path, tf_diagram** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(path && out, "null argument");
    *out = wrap(load_diagram(path));
    return TF_OK;
  });
}

void tf_diagram_free(tf_diagram* d) { delete d; }

tf_status tf_diagram_to_json(tf_context* ctx, const tf_diagram* d, char** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(out, "null argument");
    *out = dup(to_json(get(d)).dump(2));
    return TF_OK;
  });
}

tf_status tf_diagram_validate(tf_context* ctx, const tf_diagram* d, char** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(out, "null argument");
    *out = dup(nlohmann::json(validate(get(d))).dump());
    return TF_OK;
  });
}

tf_status tf_bracket(tf_context* ctx, const tf_diagram* d, char** text) {
  return guarded(ctx, [&] {
    TF_REQUIRE(text, "null argument");
    *text = dup(bracket_state_sum(get(d), ctx->bracket).to_text());
    return TF_OK;
  });
}

tf_status tf_bracket_at_one(tf_context* ctx, const tf_diagram* d, char** value) {
  return guarded(ctx, [&] {
    TF_REQUIRE(value, "null argument");
    *value = dup(bracket_state_sum(get(d), ctx->bracket).eval_at_one().str());
    return TF_OK;
  });
}

tf_status tf_two_factor_count(tf_context* ctx, const tf_diagram* d, char** value) {
  return guarded(ctx, [&] {
    TF_REQUIRE(value, "null argument");
    *value = dup(two_factor_count_formula(get(d)).str());
    return TF_OK;
  });
}

tf_status tf_two_factor_enumerate(tf_context* ctx, const tf_diagram* d, char** json) {
  return guarded(ctx, [&] {
    TF_REQUIRE(json, "null argument");
    *json = dup(edge_sets_to_json(two_factor_enumerate(get(d), ctx->limits)).dump());
    return TF_OK;
  });
}

tf_status tf_perfect_matchings(tf_context* ctx, const tf_diagram* d, char** json) {
  return guarded(ctx, [&] {
    TF_REQUIRE(json, "null argument");
    *json = dup(edge_sets_to_json(enumerate_perfect_matchings(get(d), ctx->limits)).dump());
    return TF_OK;
  });
}

tf_status tf_tait(tf_context* ctx, const tf_diagram* d, char** text) {
  return guarded(ctx, [&] {
    TF_REQUIRE(text, "null argument");
    *text = dup(tait_polynomial(get(d), ctx->bracket, ctx->limits).to_text());
    return TF_OK;
  });
}

tf_status tf_tait_at_one(tf_context* ctx, const tf_diagram* d, char** value) {
  return guarded(ctx, [&] {
    TF_REQUIRE(value, "null argument");
    *value = dup(tait_polynomial(get(d), ctx->bracket, ctx->limits).eval_at_one().str());
    return TF_OK;
  });
}

tf_status tf_tait_colorings(tf_context* ctx, const tf_diagram* d, char** value) {
  return guarded(ctx, [&] {
    TF_REQUIRE(value, "null argument");
    *value = dup(tait_colorings_count(get(d)).str());
    return TF_OK;
  });
}

tf_status tf_cube(tf_context* ctx, const tf_diagram* d, tf_cube_format format, char** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(out, "null argument");
    TF_REQUIRE(format == TF_CUBE_DOT || format == TF_CUBE_JSON, "unknown cube format");
    const CubeFormat f = format == TF_CUBE_DOT ? CubeFormat::kDot : CubeFormat::kJson;
    *out = dup(export_cube(cube(get(d), ctx->bracket), f));
    return TF_OK;
  });
}

tf_status tf_classify_faces(tf_context* ctx, const tf_diagram* d, char** json) {
  return guarded(ctx, [&] {
    TF_REQUIRE(json, "null argument");
    *json = dup(face_table(get(d)).dump());
    return TF_OK;
  });
}

tf_status tf_ih_move(tf_context* ctx, const tf_diagram* d, uint32_t edge, tf_diagram** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(out, "null argument");
    *out = wrap(ih_move(get(d), EdgeId{edge}));
    return TF_OK;
  });
}

tf_status tf_smooth(tf_context* ctx, const tf_diagram* d, uint32_t edge, tf_smooth_dir dir,
                    tf_diagram** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(out, "null argument");
    TF_REQUIRE(dir == TF_SMOOTH_VERTICAL || dir == TF_SMOOTH_HORIZONTAL, "unknown direction");
    const SmoothDirection sd =
        dir == TF_SMOOTH_VERTICAL ? SmoothDirection::kVertical : SmoothDirection::kHorizontal;
    *out = wrap(smooth(get(d), EdgeId{edge}, sd));
    return TF_OK;
  });
}

tf_status tf_reduce(tf_context* ctx, const tf_diagram* d, tf_diagram** out, char** moves_json) {
  return guarded(ctx, [&] {
    TF_REQUIRE(out && moves_json, "null argument");
    Reduction r = reduce_to_short_cycle(get(d));
    char* moves = dup(moves_to_json(r.moves).dump(2));
    *out = wrap(std::move(r.result));
    *moves_json = moves;
    return TF_OK;
  });
}

tf_status tf_replay(tf_context* ctx, const tf_diagram* d, const char* moves_json, tf_diagram** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(moves_json && out, "null argument");
    *out = wrap(replay(get(d), moves_from_json(nlohmann::json::parse(moves_json))));
    return TF_OK;
  });
}

tf_status tf_generate(tf_context* ctx, unsigned vertices, uint64_t seed, tf_diagram** out) {
  return guarded(ctx, [&] {
    TF_REQUIRE(out, "null argument");
    *out = wrap(generate({vertices, seed, MatchingPolicy::kRandom}));
    return TF_OK;
  });
}

tf_status tf_verify(tf_context* ctx, const tf_diagram* d, int all_matchings, char** jsonl,
                    char** summary) {
  return guarded(ctx, [&] {
    TF_REQUIRE(jsonl && summary, "null argument");
    VerifyOptions options;
    options.bracket = ctx->bracket;
    options.limits = ctx->limits;
    options.all_matchings = all_matchings != 0;
    options.params = {{"all_matchings", options.all_matchings}};
    const VerificationReport report = verify_instance(get(d), options);
    char* lines = dup(report.to_jsonl());
    *summary = dup(report.summary());
    *jsonl = lines;
    return report.passed() ? TF_OK : TF_CHECK_FAILED;
  });
}

tf_status tf_verify_corpus(tf_context* ctx, unsigned count, unsigned min_vertices, unsigned max_vertices,
                           uint64_t seed, int all_matchings, char** header, char** jsonl,
                           char** summary) {
  return guarded(ctx, [&] {
    TF_REQUIRE(header && jsonl && summary, "null argument");
    CorpusSpec spec;
    spec.count = count;
    spec.min_vertices = min_vertices;
    spec.max_vertices = max_vertices;
    spec.seed = seed;
    spec.policy = all_matchings ? MatchingPolicy::kAll : MatchingPolicy::kRandom;
    spec.threads = ctx->bracket.threads;
    VerifyOptions options;
    options.limits = ctx->limits;
    options.bracket.max_matching_edges = ctx->bracket.max_matching_edges;
    const VerificationReport report = verify_corpus(spec, options);
    char* h = dup(corpus_header(spec));
    char* lines = dup(report.to_jsonl());
    *summary = dup(report.summary());
    *header = h;
    *jsonl = lines;
    return report.passed() ? TF_OK : TF_CHECK_FAILED;
  });
}

tf_status tf_closure_identity(tf_context* ctx, char** report) {
  return guarded(ctx, [&] {
    TF_REQUIRE(report, "null argument");
    const ClosureReport r = triangle_closure_identity();
    std::string out;
    for (const ClosureCase& c : r.cases)
      out += pairing_text(c.pairing) + columns_text(c.circles) + " | sum " +
             std::to_string(c.alternating_sum) + '\n';
    out += r.passed() ? "all 15 pairings vanish\n" : "closure identity FAILED\n";
    *report = dup(out);
    return r.passed() ? TF_OK : TF_CHECK_FAILED;
  });
}

}  // extern "C"
