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

#ifndef SEQGAME_REPORT_HPP_
#define SEQGAME_REPORT_HPP_

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "seqgame/sequence_form.hpp"
#include "seqgame/solver.hpp"

namespace seqgame {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr const char* kTraceHeader =
    "iter,residual,duality_gap,value,p0,neg_q0,feas_x,feas_y,min_x,min_y,elapsed_ms";

// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string trace_row(const TracePoint& t) {
  std::string row = std::to_string(t.iter);
  for (double v : {t.residual, t.gap, t.value, t.p0, t.neg_q0, t.feas_x, t.feas_y,
                   t.min_x, t.min_y, t.elapsed_ms}) {
    row += ',';
    row += format_double(v);
  }
  return row;
}

inline void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << kTraceHeader << '\n';
  for (const TracePoint& t : trace) out << trace_row(t) << '\n';
}

// 64-bit FNV-1a; identifies game files in run manifests.
inline std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Everything needed to rerun a solve: the command, its resolved flags, and
// where the game came from.
struct RunManifest {
  std::string command = "solve";
  nlohmann::json flags = nlohmann::json::object();
  std::uint64_t seed = 0;
  nlohmann::json game_source = nlohmann::json::object();
  std::string version = kVersion;
};

inline nlohmann::json to_json(const RunManifest& m) {
  return {{"command", m.command}, {"flags", m.flags}, {"seed", m.seed},
          {"game_source", m.game_source}, {"version", m.version}};
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.flags = j.at("flags");
  m.seed = j.at("seed").get<std::uint64_t>();
  m.game_source = j.at("game_source");
  m.version = j.at("version").get<std::string>();
  return m;
}

inline nlohmann::json to_json(const FeasibilityResiduals& f) {
  return {{"feas_x", f.feas_x}, {"feas_y", f.feas_y}, {"min_x", f.min_x}, {"min_y", f.min_y}};
}

inline nlohmann::json report_to_json(const SolveReport& r, const RunManifest& m) {
  return {{"converged", r.converged},
          {"iterations", r.iterations},
          {"epsilon", r.epsilon},
          {"lambda", r.lambda},
          {"norm_K", r.norm_K},
          {"residual", r.residual},
          {"value", r.value},
          {"duality_gap", r.duality_gap},
          {"feas", to_json(r.feas)},
          {"manifest", to_json(m)}};
}

inline nlohmann::json to_json(const Quadruplet& z) {
  return {{"y", z.y}, {"p", z.p}, {"x", z.x}, {"q", z.q}};
}

inline nlohmann::json strategies_to_json(const SolveReport& r, const SequenceFormGame& g) {
  nlohmann::json j{{"x_bar", r.x_bar},
                   {"y_bar", r.y_bar},
                   {"last", to_json(r.last)},
                   {"ergodic", to_json(r.ergodic)}};
  if (!g.labels.sequences1.empty()) j["sequences1"] = g.labels.sequences1;
  if (!g.labels.sequences2.empty()) j["sequences2"] = g.labels.sequences2;
  return j;
}

}  // namespace seqgame

#endif  // SEQGAME_REPORT_HPP_
