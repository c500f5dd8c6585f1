// Copyright 2026 The seqgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// seqgame: build, validate and solve two-person zero-sum games in sequence
// form from the command line.
//
// Exit codes: 0 ok, 1 validation failure, 2 parse or usage error,
// 3 no convergence within --max-iters, 4 numerical divergence, 5 I/O error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seqgame/json_io.hpp"
#include "seqgame/report.hpp"
#include "seqgame/seqgame.hpp"

namespace {

using seqgame::io::Json;

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kParseError = 2,
  kNotConverged = 3,
  kDiverged = 4,
  kIoError = 5,
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out.flush()) throw IoError("cannot write " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseFailure(path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

seqgame::SequenceFormGame load_game(const std::string& path, const std::string& text) {
  try {
    return seqgame::io::game_from_json(parse_json(text, path));
  } catch (const seqgame::FormatError& e) {
    throw ParseFailure(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------- make-game

struct MakeGameArgs {
  std::string kind;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string efg_out;
  std::string efg_in;
};

std::string default_efg_path(const std::string& out) {
  std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + ".efg.json")).string();
}

int run_make_game(const MakeGameArgs& a) {
  if (a.kind == "kuhn") {
    const seqgame::ExtensiveFormGame efg = seqgame::kuhn_poker();
    const seqgame::CompiledGame compiled = seqgame::to_sequence_form(efg);
    write_file(a.out, dump(seqgame::io::to_json(compiled.game)));
    write_file(a.efg_out.empty() ? default_efg_path(a.out) : a.efg_out,
               dump(seqgame::io::to_json(efg)));
  } else if (a.kind == "random-matrix") {
    if (a.rows == 0 || a.cols == 0) {
      std::cerr << "make-game random-matrix: --rows and --cols must be positive\n";
      return kParseError;
    }
    write_file(a.out, dump(seqgame::io::to_json(seqgame::random_matrix_game(a.rows, a.cols, a.seed))));
  } else if (a.kind == "efg") {
    if (a.efg_in.empty()) {
      std::cerr << "make-game efg: --efg <file> is required\n";
      return kParseError;
    }
    seqgame::ExtensiveFormGame efg;
    try {
      efg = seqgame::io::efg_from_json(parse_json(read_file(a.efg_in), a.efg_in));
    } catch (const seqgame::FormatError& e) {
      throw ParseFailure(a.efg_in + ": " + e.what());
    }
    try {
      write_file(a.out, dump(seqgame::io::to_json(seqgame::to_sequence_form(efg).game)));
    } catch (const seqgame::CompileError& e) {
      std::cerr << a.efg_in << ": " << e.what() << "\n";
      return kValidationFailure;
    }
  }
  return kOk;
}

// ----------------------------------------------------------------- validate

int run_validate(const std::string& path) {
  const seqgame::SequenceFormGame game = load_game(path, read_file(path));
  const auto violations = seqgame::validate_sequence_form(game);
  for (const auto& v : violations) std::cout << v.describe() << "\n";
  return violations.empty() ? kOk : kValidationFailure;
}

// -------------------------------------------------------------------- solve

struct SolveArgs {
  std::string game_path;
  std::string builtin;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t seed = 0;
  double epsilon = 1e-4;
  std::size_t max_iters = 1000000;
  std::size_t trace_every = 10;
  bool dq_updated_y = true;
  bool reclip_y = false;
  std::optional<double> lambda;
  bool timing = false;
  std::string trace_path;
  std::string report_path;
  std::string strategies_path;
  std::string replay_path;
};

Json flags_to_json(const SolveArgs& a) {
  Json j{{"builtin", a.builtin},
         {"game", a.game_path},
         {"rows", a.rows},
         {"cols", a.cols},
         {"seed", a.seed},
         {"epsilon", a.epsilon},
         {"max_iters", a.max_iters},
         {"trace_every", a.trace_every},
         {"dq_updated_y", a.dq_updated_y},
         {"reclip_y", a.reclip_y},
         {"timing", a.timing}};
  j["lambda"] = a.lambda ? Json(*a.lambda) : Json(nullptr);
  return j;
}

void apply_manifest(SolveArgs& a, const seqgame::RunManifest& m) {
  const Json& f = m.flags;
  a.builtin = f.at("builtin").get<std::string>();
  a.game_path = f.at("game").get<std::string>();
  a.rows = f.at("rows").get<std::size_t>();
  a.cols = f.at("cols").get<std::size_t>();
  a.seed = f.at("seed").get<std::uint64_t>();
  a.epsilon = f.at("epsilon").get<double>();
  a.max_iters = f.at("max_iters").get<std::size_t>();
  a.trace_every = f.at("trace_every").get<std::size_t>();
  a.dq_updated_y = f.at("dq_updated_y").get<bool>();
  a.reclip_y = f.at("reclip_y").get<bool>();
  a.timing = f.at("timing").get<bool>();
  a.lambda.reset();
  if (!f.at("lambda").is_null()) a.lambda = f.at("lambda").get<double>();
}

struct LoadedGame {
  seqgame::SequenceFormGame game;
  Json source;
};

LoadedGame resolve_game(const SolveArgs& a) {
  LoadedGame out;
  if (!a.builtin.empty()) {
    if (a.builtin == "kuhn") {
      out.game = seqgame::to_sequence_form(seqgame::kuhn_poker()).game;
      out.source = Json{{"builtin", "kuhn"}};
    } else {
      if (a.rows == 0 || a.cols == 0) {
        throw ParseFailure("--builtin random-matrix needs positive --rows and --cols");
      }
      out.game = seqgame::random_matrix_game(a.rows, a.cols, a.seed);
      out.source = Json{{"builtin", "random-matrix"}, {"rows", a.rows}, {"cols", a.cols},
                        {"seed", a.seed}};
    }
    return out;
  }
  if (a.game_path.empty()) throw ParseFailure("solve: give a game file or --builtin");
  const std::string text = read_file(a.game_path);
  out.game = load_game(a.game_path, text);
  out.source = Json{{"path", a.game_path}, {"fnv1a64", seqgame::fnv1a64_hex(text)}};
  return out;
}

std::string summary_line(const seqgame::SolveReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "iterations=%zu residual=%.6e value=%.10f gap=%.6e converged=%s",
                r.iterations, r.residual, r.value, r.duality_gap,
                r.converged ? "true" : "false");
  return buf;
}

int run_solve(SolveArgs a) {
  if (!a.replay_path.empty()) {
    const Json report = parse_json(read_file(a.replay_path), a.replay_path);
    seqgame::RunManifest m;
    try {
      m = seqgame::manifest_from_json(report.at("manifest"));
    } catch (const Json::exception& e) {
      throw ParseFailure(a.replay_path + ": bad manifest: " + e.what());
    }
    apply_manifest(a, m);
    if (m.game_source.contains("fnv1a64")) {
      const std::string now = seqgame::fnv1a64_hex(read_file(a.game_path));
      if (now != m.game_source.at("fnv1a64").get<std::string>()) {
        std::cerr << "replay: " << a.game_path << " changed since the recorded run\n";
        return kValidationFailure;
      }
    }
  }

  const LoadedGame loaded = resolve_game(a);
  if (const auto v = seqgame::validate_sequence_form(loaded.game); !v.empty()) {
    for (const auto& violation : v) std::cerr << violation.describe() << "\n";
    return kValidationFailure;
  }

  seqgame::SolverConfig config;
  config.epsilon = a.epsilon;
  config.max_iter = a.max_iters;
  config.lambda_override = a.lambda;
  config.seed = a.seed;
  config.trace_every = a.trace_path.empty() ? 0 : a.trace_every;
  config.dq_uses_updated_y = a.dq_updated_y;
  config.reclip_y_after_correction = a.reclip_y;
  config.record_timing = a.timing;

  seqgame::RunManifest manifest;
  manifest.flags = flags_to_json(a);
  manifest.seed = a.seed;
  manifest.game_source = loaded.source;

  seqgame::SolveReport report;
  try {
    report = seqgame::solve(loaded.game, config);
  } catch (const seqgame::DivergenceError& e) {
    std::cerr << e.what() << "\n";
    return kDiverged;
  }

  if (!a.trace_path.empty()) {
    std::ostringstream csv;
    seqgame::write_trace_csv(csv, report.trace);
    write_file(a.trace_path, csv.str());
  }
  if (!a.report_path.empty()) {
    write_file(a.report_path, dump(seqgame::report_to_json(report, manifest)));
  }
  if (!a.strategies_path.empty()) {
    write_file(a.strategies_path, dump(seqgame::strategies_to_json(report, loaded.game)));
  }
  std::cout << summary_line(report) << "\n";
  return report.converged ? kOk : kNotConverged;
}

// -------------------------------------------------------------------- bench

struct BenchArgs {
  std::vector<std::size_t> sizes{100};
  std::vector<std::uint64_t> seeds{0};
  double epsilon = 1e-4;
  std::size_t max_iters = 5000;
  std::size_t trace_every = 10;
  std::string out_dir = ".";
};

int run_bench(const BenchArgs& a) {
  std::filesystem::create_directories(a.out_dir);
  int worst = kOk;
  for (std::size_t n : a.sizes) {
    for (std::uint64_t seed : a.seeds) {
      SolveArgs s;
      s.builtin = "random-matrix";
      s.rows = s.cols = n;
      s.seed = seed;
      s.epsilon = a.epsilon;
      s.max_iters = a.max_iters;
      s.trace_every = a.trace_every;
      s.trace_path = (std::filesystem::path(a.out_dir) /
                      ("random_" + std::to_string(n) + "_seed" + std::to_string(seed) + ".csv"))
                         .string();
      std::cout << "size=" << n << " seed=" << seed << " ";
      std::cout.flush();
      const int code = run_solve(s);
      if (code != kOk && code != kNotConverged) return code;
      if (code > worst) worst = code;
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate Nash equilibria of zero-sum sequence-form games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(seqgame::kVersion));

  MakeGameArgs make;
  CLI::App* make_cmd = app.add_subcommand("make-game", "Write a game as sequence-form JSON");
  make_cmd->add_option("kind", make.kind, "kuhn | random-matrix | efg")
      ->required()
      ->check(CLI::IsMember({"kuhn", "random-matrix", "efg"}));
  make_cmd->add_option("--rows", make.rows, "Rows of the random payoff matrix");
  make_cmd->add_option("--cols", make.cols, "Columns of the random payoff matrix");
  make_cmd->add_option("--seed", make.seed, "Generator seed");
  make_cmd->add_option("--out", make.out, "Sequence-form JSON output")->required();
  make_cmd->add_option("--efg-out", make.efg_out, "Game-tree JSON output (kuhn)");
  make_cmd->add_option("--efg", make.efg_in, "Game-tree JSON input (efg)");

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check sequence-form structure");
  validate_cmd->add_option("game", validate_path, "Sequence-form JSON")->required();

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run the primal-dual solver");
  solve_cmd->add_option("game", solve.game_path, "Sequence-form JSON");
  solve_cmd->add_option("--builtin", solve.builtin, "Built-in game")
      ->check(CLI::IsMember({"kuhn", "random-matrix"}));
  solve_cmd->add_option("--rows", solve.rows, "Rows (random-matrix)");
  solve_cmd->add_option("--cols", solve.cols, "Columns (random-matrix)");
  solve_cmd->add_option("--seed", solve.seed, "Seed for the game generator and the |K| estimate");
  solve_cmd->add_option("--epsilon", solve.epsilon, "Target residual")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iters", solve.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--trace-every", solve.trace_every, "Trace period in iterations")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--trace", solve.trace_path, "Trace CSV output");
  solve_cmd->add_option("--report", solve.report_path, "Report JSON output");
  solve_cmd->add_option("--strategies", solve.strategies_path, "Strategies JSON output");
  solve_cmd->add_option("--dq-updated-y", solve.dq_updated_y,
                        "Use the clipped y of the current iteration in the q step (default true)");
  solve_cmd->add_flag("--reclip-y", solve.reclip_y, "Clip y at zero after the correction step");
  solve_cmd->add_option("--lambda", solve.lambda, "Step size override")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--timing", solve.timing, "Fill the elapsed_ms trace column");
  solve_cmd->add_option("--replay", solve.replay_path, "Rerun the manifest stored in a report");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Solve a grid of random matrix games");
  bench_cmd->add_option("--sizes", bench.sizes, "Square game sizes")->delimiter(',');
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds")->delimiter(',');
  bench_cmd->add_option("--epsilon", bench.epsilon, "Target residual")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-iters", bench.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--trace-every", bench.trace_every, "Trace period")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out-dir", bench.out_dir, "Directory for trace CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*make_cmd) return run_make_game(make);
    if (*validate_cmd) return run_validate(validate_path);
    if (*solve_cmd) return run_solve(solve);
    if (*bench_cmd) return run_bench(bench);
  } catch (const ParseFailure& e) {
    std::cerr << e.what() << "\n";
    return kParseError;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return kIoError;
  } catch (const seqgame::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kValidationFailure;
  } catch (const seqgame::CompileError& e) {
    std::cerr << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  return kOk;
}
