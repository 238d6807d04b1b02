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

// Command-line front end. Talks to the library through the C interface only.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twofactor/twofactor.h"

namespace {

struct ContextDeleter {
  void operator()(tf_context* c) const { tf_context_free(c); }
};
struct DiagramDeleter {
  void operator()(tf_diagram* d) const { tf_diagram_free(d); }
};
using Context = std::unique_ptr<tf_context, ContextDeleter>;
using Diagram = std::unique_ptr<tf_diagram, DiagramDeleter>;

// Thrown to unwind with a library status after the message is printed.
struct Exit {
  int code;
};

Context g_ctx;

void check(tf_status status) {
  if (status == TF_OK) return;
  std::cerr << "error: " << tf_status_name(status) << ": " << tf_last_error(g_ctx.get()) << '\n';
  throw Exit{static_cast<int>(status)};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  tf_string_free(s);
  return out;
}

Diagram load(const std::string& path) {
  tf_diagram* d = nullptr;
  check(tf_diagram_load(g_ctx.get(), path.c_str(), &d));
  return Diagram(d);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    throw Exit{TF_INVALID_INPUT};
  }
  out << text;
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

void emit_diagram(const tf_diagram* d, const std::string& path) {
  char* json = nullptr;
  check(tf_diagram_to_json(g_ctx.get(), d, &json));
  emit(with_newline(take(json)), path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << '\n';
    throw Exit{TF_INVALID_INPUT};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prints the table returned by tf_classify_faces. Only the fields the CLI
// needs are picked out, so a tiny scanner suffices.
std::string face_rows(const std::string& json) {
  std::string out = "face length m l reducible\n";
  std::size_t pos = 0;
  auto field = [&](const std::string& row, const char* key) {
    const std::string needle = std::string("\"") + key + "\":";
    std::size_t at = row.find(needle);
    if (at == std::string::npos) return std::string("?");
    at += needle.size();
    std::size_t end = row.find_first_of(",}", at);
    return row.substr(at, end - at);
  };
  while ((pos = json.find('{', pos)) != std::string::npos) {
    const std::size_t close = json.find('}', pos);
    const std::string row = json.substr(pos, close - pos + 1);
    out += field(row, "face") + ' ' + field(row, "length") + ' ' + field(row, "matching") + ' ' +
           field(row, "unmatched") + ' ' + (field(row, "reducible") == "true" ? "yes" : "no") + '\n';
    pos = close;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  g_ctx.reset(tf_context_new());
  if (!g_ctx) return TF_INTERNAL;

  CLI::App app{"2-factor bracket polynomial of planar trivalent graphs with perfect matchings"};
  app.require_subcommand(1);
  unsigned threads = 1;
  unsigned max_k = 30;
  app.add_option("--threads", threads, "worker threads (0 = all hardware threads)");
  app.add_option("--max-matching-edges", max_k, "state-sum limit on matching edges")->check(CLI::Range(0, 62));

  std::string input, output;
  bool at_one = false, enumerate = false, oracle = false, all_matchings = false;

  auto* bracket = app.add_subcommand("bracket", "bracket polynomial");
  bracket->add_option("graph", input)->required();
  bracket->add_flag("--at-one", at_one, "also print the value at z = 1");

  auto* count2f = app.add_subcommand("count2f", "2-factors through the matching");
  count2f->add_option("graph", input)->required();
  count2f->add_flag("--enumerate", enumerate, "also print the brute-force count and the 2-factors");

  auto* matchings = app.add_subcommand("matchings", "all perfect matchings");
  matchings->add_option("graph", input)->required();

  auto* tait = app.add_subcommand("tait", "planar Tait polynomial");
  tait->add_option("graph", input)->required();
  tait->add_flag("--at-one", at_one, "also print the value at z = 1");
  tait->add_flag("--oracle", oracle, "also print the brute-force Tait colouring count");

  std::string format = "dot";
  auto* cube = app.add_subcommand("cube", "cube of resolutions");
  cube->add_option("graph", input)->required();
  cube->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  cube->add_option("-o,--output", output);

  std::uint32_t edge = 0;
  auto* ih = app.add_subcommand("ih", "IH-move on a matching edge");
  ih->add_option("graph", input)->required();
  ih->add_option("--edge", edge)->required();
  ih->add_option("-o,--output", output);

  std::string dir;
  auto* smooth = app.add_subcommand("smooth", "smooth a matching edge");
  smooth->add_option("graph", input)->required();
  smooth->add_option("--edge", edge)->required();
  smooth->add_option("--dir", dir)->required()->check(CLI::IsMember({"vertical", "horizontal"}));
  smooth->add_option("-o,--output", output);

  std::string moves_path;
  auto* reduce = app.add_subcommand("reduce", "IH-moves down to a complement cycle of length <= 3");
  reduce->add_option("graph", input)->required();
  reduce->add_option("-o,--output", output);
  reduce->add_option("--moves", moves_path, "write the move log here");

  auto* replay = app.add_subcommand("replay", "apply a move log");
  replay->add_option("graph", input)->required();
  replay->add_option("--moves", moves_path)->required();
  replay->add_option("-o,--output", output);

  auto* classify = app.add_subcommand("classify", "per-face (m, l) labels");
  classify->add_option("graph", input)->required();

  unsigned random_count = 0, min_size = 6, max_size = 14;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("graph", input);
  verify->add_option("--random", random_count, "verify this many generated instances instead");
  verify->add_option("--min-size", min_size);
  verify->add_option("--max-size", max_size);
  verify->add_option("--seed", seed);
  verify->add_flag("--all-matchings", all_matchings, "check every perfect matching");
  verify->add_option("-o,--output", output, "write the JSONL report here instead of stdout");

  unsigned vertices = 0;
  auto* gen = app.add_subcommand("gen", "generate a random planar cubic graph with a matching");
  gen->add_option("--vertices", vertices)->required();
  gen->add_option("--seed", seed);
  gen->add_option("-o,--output", output);

  auto* closure = app.add_subcommand("closure-identity", "triangle closure identity over all pairings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : TF_INVALID_INPUT;
  }

  tf_context* ctx = g_ctx.get();
  try {
    check(tf_context_set_threads(ctx, threads));
    check(tf_context_set_max_matching_edges(ctx, max_k));

    if (bracket->parsed()) {
      Diagram d = load(input);
      char* text = nullptr;
      check(tf_bracket(ctx, d.get(), &text));
      std::cout << take(text) << '\n';
      if (at_one) {
        char* value = nullptr;
        check(tf_bracket_at_one(ctx, d.get(), &value));
        std::cout << take(value) << '\n';
      }
    } else if (count2f->parsed()) {
      Diagram d = load(input);
      char* value = nullptr;
      check(tf_two_factor_count(ctx, d.get(), &value));
      std::cout << take(value) << '\n';
      if (enumerate) {
        char* json = nullptr;
        check(tf_two_factor_enumerate(ctx, d.get(), &json));
        const std::string list = take(json);
        std::size_t count = 0;
        for (std::size_t i = 1; i + 1 < list.size(); ++i)
          if (list[i] == '[') ++count;
        std::cout << count << '\n' << list << '\n';
      }
    } else if (matchings->parsed()) {
      Diagram d = load(input);
      char* json = nullptr;
      check(tf_perfect_matchings(ctx, d.get(), &json));
      std::cout << take(json) << '\n';
    } else if (tait->parsed()) {
      Diagram d = load(input);
      char* text = nullptr;
      check(tf_tait(ctx, d.get(), &text));
      std::cout << take(text) << '\n';
      if (at_one) {
        char* value = nullptr;
        check(tf_tait_at_one(ctx, d.get(), &value));
        std::cout << take(value) << '\n';
      }
      if (oracle) {
        char* value = nullptr;
        check(tf_tait_colorings(ctx, d.get(), &value));
        std::cout << take(value) << '\n';
      }
    } else if (cube->parsed()) {
      Diagram d = load(input);
      char* out = nullptr;
      check(tf_cube(ctx, d.get(), format == "dot" ? TF_CUBE_DOT : TF_CUBE_JSON, &out));
      emit(with_newline(take(out)), output);
    } else if (ih->parsed()) {
      Diagram d = load(input);
      tf_diagram* out = nullptr;
      check(tf_ih_move(ctx, d.get(), edge, &out));
      Diagram result(out);
      emit_diagram(result.get(), output);
    } else if (smooth->parsed()) {
      Diagram d = load(input);
      tf_diagram* out = nullptr;
      check(tf_smooth(ctx, d.get(), edge, dir == "vertical" ? TF_SMOOTH_VERTICAL : TF_SMOOTH_HORIZONTAL,
                      &out));
      Diagram result(out);
      emit_diagram(result.get(), output);
    } else if (reduce->parsed()) {
      Diagram d = load(input);
      tf_diagram* out = nullptr;
      char* moves = nullptr;
      check(tf_reduce(ctx, d.get(), &out, &moves));
      Diagram result(out);
      const std::string log = with_newline(take(moves));
      emit_diagram(result.get(), output);
      if (!moves_path.empty()) emit(log, moves_path);
    } else if (replay->parsed()) {
      Diagram d = load(input);
      const std::string log = read_file(moves_path);
      tf_diagram* out = nullptr;
      check(tf_replay(ctx, d.get(), log.c_str(), &out));
      Diagram result(out);
      emit_diagram(result.get(), output);
    } else if (classify->parsed()) {
      Diagram d = load(input);
      char* json = nullptr;
      check(tf_classify_faces(ctx, d.get(), &json));
      std::cout << face_rows(take(json));
    } else if (verify->parsed()) {
      char* jsonl = nullptr;
      char* summary = nullptr;
      tf_status status;
      if (random_count > 0) {
        if (!input.empty()) {
          std::cerr << "error: give either a graph or --random, not both\n";
          return TF_INVALID_INPUT;
        }
        char* header = nullptr;
        status = tf_verify_corpus(ctx, random_count, min_size, max_size, seed, all_matchings ? 1 : 0,
                                  &header, &jsonl, &summary);
        if (status == TF_OK || status == TF_CHECK_FAILED) std::cerr << take(header) << '\n';
      } else {
        if (input.empty()) {
          std::cerr << "error: verify needs a graph file or --random N\n";
          return TF_INVALID_INPUT;
        }
        Diagram d = load(input);
        status = tf_verify(ctx, d.get(), all_matchings ? 1 : 0, &jsonl, &summary);
      }
      if (status != TF_OK && status != TF_CHECK_FAILED) check(status);
      emit(take(jsonl), output);
      std::cerr << take(summary);
      return status;
    } else if (gen->parsed()) {
      tf_diagram* out = nullptr;
      check(tf_generate(ctx, vertices, seed, &out));
      Diagram result(out);
      emit_diagram(result.get(), output);
    } else if (closure->parsed()) {
      char* report = nullptr;
      const tf_status status = tf_closure_identity(ctx, &report);
      if (status != TF_OK && status != TF_CHECK_FAILED) check(status);
      std::cout << take(report);
      return status;
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return 0;
}
