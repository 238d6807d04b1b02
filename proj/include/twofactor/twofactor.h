/* Copyright 2026 The twofactor Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libtwofactor.
 *
 * Every fallible call returns a tf_status and reports details through
 * tf_last_error() on the context it was given. Strings returned through
 * `char**` out-parameters are owned by the caller and released with
 * tf_string_free(); diagrams with tf_diagram_free(). Out-parameters are left
 * untouched unless the call returns TF_OK (or TF_CHECK_FAILED for the
 * verification calls, which still produce their reports).
 *
 * A context may be used from one thread at a time; distinct contexts are
 * independent.
 */

#ifndef TWOFACTOR_TWOFACTOR_H_
#define TWOFACTOR_TWOFACTOR_H_

#include <stdint.h>

#if defined(_WIN32)
#define TF_API __declspec(dllexport)
#else
#define TF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
  TF_OK = 0,
  TF_INVALID_INPUT = 1,
  TF_CHECK_FAILED = 2,
  TF_LIMIT_EXCEEDED = 3,
  TF_INTERNAL = 4
} tf_status;

typedef enum tf_cube_format { TF_CUBE_DOT = 0, TF_CUBE_JSON = 1 } tf_cube_format;
typedef enum tf_smooth_dir { TF_SMOOTH_VERTICAL = 0, TF_SMOOTH_HORIZONTAL = 1 } tf_smooth_dir;

typedef struct tf_context tf_context;
typedef struct tf_diagram tf_diagram;

TF_API const char* tf_version(void);
TF_API const char* tf_status_name(tf_status status);

/* Contexts. */
TF_API tf_context* tf_context_new(void);
TF_API void tf_context_free(tf_context* ctx);
/* Message of the last failing call on ctx, "" if none. Valid until the next call. */
TF_API const char* tf_last_error(const tf_context* ctx);
/* 0 means one worker per hardware thread. */
TF_API tf_status tf_context_set_threads(tf_context* ctx, unsigned threads);
/* State-sum limit on matching edges (at most 62). */
TF_API tf_status tf_context_set_max_matching_edges(tf_context* ctx, unsigned k);
/* Brute-force two-factor enumeration limit on non-matching edges. */
TF_API tf_status tf_context_set_max_enumeration_edges(tf_context* ctx, unsigned m);

TF_API void tf_string_free(char* s);

/* Diagrams. */
TF_API tf_status tf_diagram_from_json(tf_context* ctx, const char* json, tf_diagram** out);
TF_API tf_status tf_diagram_load(tf_context* ctx, const char* path, tf_diagram** out);
TF_API void tf_diagram_free(tf_diagram* d);
TF_API tf_status tf_diagram_to_json(tf_context* ctx, const tf_diagram* d, char** out);
/* JSON array of validation problems; empty when valid. */
TF_API tf_status tf_diagram_validate(tf_context* ctx, const tf_diagram* d, char** out);

/* Invariants. Integers are written as decimal strings. */
TF_API tf_status tf_bracket(tf_context* ctx, const tf_diagram* d, char** text);
TF_API tf_status tf_bracket_at_one(tf_context* ctx, const tf_diagram* d, char** value);
TF_API tf_status tf_two_factor_count(tf_context* ctx, const tf_diagram* d, char** value);
/* JSON array of 2-factors, each an ascending array of edge ids. */
TF_API tf_status tf_two_factor_enumerate(tf_context* ctx, const tf_diagram* d, char** json);
TF_API tf_status tf_perfect_matchings(tf_context* ctx, const tf_diagram* d, char** json);
TF_API tf_status tf_tait(tf_context* ctx, const tf_diagram* d, char** text);
TF_API tf_status tf_tait_at_one(tf_context* ctx, const tf_diagram* d, char** value);
TF_API tf_status tf_tait_colorings(tf_context* ctx, const tf_diagram* d, char** value);
TF_API tf_status tf_cube(tf_context* ctx, const tf_diagram* d, tf_cube_format format, char** out);
/* JSON array of {"face","length","matching","unmatched","reducible"}. */
TF_API tf_status tf_classify_faces(tf_context* ctx, const tf_diagram* d, char** json);

/* Rewrites. */
TF_API tf_status tf_ih_move(tf_context* ctx, const tf_diagram* d, uint32_t edge, tf_diagram** out);
TF_API tf_status tf_smooth(tf_context* ctx, const tf_diagram* d, uint32_t edge, tf_smooth_dir dir,
                           tf_diagram** out);
TF_API tf_status tf_reduce(tf_context* ctx, const tf_diagram* d, tf_diagram** out, char** moves_json);
TF_API tf_status tf_replay(tf_context* ctx, const tf_diagram* d, const char* moves_json, tf_diagram** out);

/* Generation and verification. Reports are JSONL plus a summary table;
 * TF_CHECK_FAILED when any record fails. */
TF_API tf_status tf_generate(tf_context* ctx, unsigned vertices, uint64_t seed, tf_diagram** out);
TF_API tf_status tf_verify(tf_context* ctx, const tf_diagram* d, int all_matchings, char** jsonl,
                           char** summary);
TF_API tf_status tf_verify_corpus(tf_context* ctx, unsigned count, unsigned min_vertices,
                                  unsigned max_vertices, uint64_t seed, int all_matchings, char** header,
                                  char** jsonl, char** summary);
/* One text line per boundary pairing; TF_CHECK_FAILED if any sum is nonzero. */
TF_API tf_status tf_closure_identity(tf_context* ctx, char** report);

#ifdef __cplusplus
}
#endif

#endif /* TWOFACTOR_TWOFACTOR_H_ */
