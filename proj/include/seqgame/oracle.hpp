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

#ifndef SEQGAME_ORACLE_HPP_
#define SEQGAME_ORACLE_HPP_

// Brute-force reference computations used to check the solver's building
// blocks. Everything here is exponential or dense on purpose and guarded by
// size limits.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "seqgame/efg.hpp"
#include "seqgame/errors.hpp"
#include "seqgame/sparse.hpp"
#include "seqgame/treeplex.hpp"

namespace seqgame::oracle {

inline constexpr std::size_t kMaxCombinations = 1000000;

struct VertexSet {
  std::vector<Vector> plans;
};

// Every deterministic realization plan of the treeplex, one per choice of an
// action at every information set, with duplicates removed.
inline VertexSet enumerate_vertices(const TreeplexIndex& index) {
  const auto& sets = index.infosets();
  std::size_t combinations = 1;
  for (const InfosetNode& s : sets) {
    combinations *= s.children.size();
    if (combinations > kMaxCombinations) {
      throw SizeError("enumerate_vertices: more than 10^6 action combinations");
    }
  }
  // owner[c] = position of the information set that issues sequence c.
  std::vector<std::ptrdiff_t> owner(index.num_sequences(), -1);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t c : sets[i].children) owner[c] = static_cast<std::ptrdiff_t>(i);
  }

  std::set<Vector> seen;
  VertexSet out;
  std::vector<std::size_t> pick(sets.size(), 0);
  for (std::size_t n = 0; n < combinations; ++n) {
    // Realization of a sequence: 1 along the chosen path from the root.
    std::function<double(std::size_t)> realization = [&](std::size_t c) -> double {
      if (owner[c] < 0) return 1.0;  // root sequence
      const InfosetNode& s = sets[static_cast<std::size_t>(owner[c])];
      if (s.children[pick[static_cast<std::size_t>(owner[c])]] != c) return 0.0;
      return s.parent ? realization(*s.parent) : 1.0;
    };
    Vector z(index.num_sequences());
    for (std::size_t c = 0; c < z.size(); ++c) z[c] = realization(c);
    if (seen.insert(z).second) out.plans.push_back(std::move(z));

    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (++pick[i] < sets[i].children.size()) break;
      pick[i] = 0;
    }
  }
  return out;
}

// max (or min) of <g, z> over all vertices.
inline double vertex_optimum(const VertexSet& vertices, std::span<const double> g,
                             Sense sense) {
  double best = sense == Sense::kMax ? -INFINITY : INFINITY;
  for (const Vector& z : vertices.plans) {
    const double v = dot(g, z);
    best = sense == Sense::kMax ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

struct MatrixGameSolution {
  double value = 0.0;
  Vector x;
  Vector y;
};

// Closed-form minimax solution of a 2x2 zero-sum game (row player maximizes).
inline MatrixGameSolution solve_2x2(const std::array<std::array<double, 2>, 2>& a) {
  const double row_min[2] = {std::min(a[0][0], a[0][1]), std::min(a[1][0], a[1][1])};
  const double col_max[2] = {std::max(a[0][0], a[1][0]), std::max(a[0][1], a[1][1])};
  const std::size_t i = row_min[1] > row_min[0] ? 1 : 0;
  const std::size_t j = col_max[1] < col_max[0] ? 1 : 0;
  MatrixGameSolution s;
  if (row_min[i] == col_max[j]) {
    s.value = row_min[i];
    s.x = {i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0};
    s.y = {j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0};
    return s;
  }
  const double d = a[0][0] - a[0][1] - a[1][0] + a[1][1];
  const double x0 = (a[1][1] - a[1][0]) / d;
  const double y0 = (a[1][1] - a[0][1]) / d;
  s.value = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
  s.x = {x0, 1.0 - x0};
  s.y = {y0, 1.0 - y0};
  return s;
}

// Largest singular value from a cyclic Jacobi eigen-decomposition of M^T M.
inline double dense_spectral_norm(const std::vector<Vector>& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  if (rows * cols > 64 * 64) throw SizeError("dense_spectral_norm: matrix larger than 64x64 entries");
  if (cols == 0) return 0.0;
  std::vector<Vector> b(cols, Vector(cols, 0.0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < rows; ++r) acc += m[r][i] * m[r][j];
      b[i][j] = acc;
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < cols; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        total += b[i][j] * b[i][j];
        if (i != j) off += b[i][j] * b[i][j];
      }
    }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        if (b[p][q] == 0.0) continue;
        const double theta = (b[q][q] - b[p][p]) / (2.0 * b[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < cols; ++k) {
          const double bkp = b[k][p];
          const double bkq = b[k][q];
          b[k][p] = c * bkp - s * bkq;
          b[k][q] = s * bkp + c * bkq;
        }
        for (std::size_t k = 0; k < cols; ++k) {
          const double bpk = b[p][k];
          const double bqk = b[q][k];
          b[p][k] = c * bpk - s * bqk;
          b[q][k] = s * bpk + c * bqk;
        }
      }
    }
  }
  double top = 0.0;
  for (std::size_t i = 0; i < cols; ++i) top = std::max(top, b[i][i]);
  return std::sqrt(top);
}

// Expected payoff to player 1 when both players follow pure strategies,
// averaging over chance by walking the whole tree.
inline double efg_rollout_value(const ExtensiveFormGame& efg,
                                const PureStrategy& pure1,
                                const PureStrategy& pure2) {
  std::function<double(NodeId)> walk = [&](NodeId id) -> double {
    const Node& node = efg.node(id);
    if (const auto* t = std::get_if<TerminalNode>(&node)) return t->payoff;
    if (const auto* c = std::get_if<ChanceNode>(&node)) {
      double acc = 0.0;
      for (const ChanceOutcome& o : c->outcomes) acc += o.probability * walk(o.child);
      return acc;
    }
    const auto& d = std::get<DecisionNode>(node);
    const PureStrategy& s = d.player == 1 ? pure1 : pure2;
    const auto it = s.find(d.infoset);
    if (it == s.end()) throw StrategyError("no action chosen at infoset " + d.infoset);
    if (it->second >= d.actions.size()) {
      throw StrategyError("action out of range at infoset " + d.infoset);
    }
    return walk(d.actions[it->second].child);
  };
  return walk(efg.root());
}

// All pure strategies of one player (every combination of actions).
inline std::vector<PureStrategy> enumerate_pure_strategies(const ExtensiveFormGame& efg,
                                                           int player) {
  std::vector<std::pair<std::string, std::size_t>> sets;
  std::size_t total = 1;
  for (const auto& [name, info] : efg.infosets()) {
    if (info.player != player) continue;
    sets.emplace_back(name, info.num_actions);
    total *= info.num_actions;
    if (total > kMaxCombinations) {
      throw SizeError("enumerate_pure_strategies: more than 10^6 strategies");
    }
  }
  std::vector<PureStrategy> out;
  std::vector<std::size_t> pick(sets.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    PureStrategy s;
    for (std::size_t i = 0; i < sets.size(); ++i) s[sets[i].first] = pick[i];
    out.push_back(std::move(s));
    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (++pick[i] < sets[i].second) break;
      pick[i] = 0;
    }
  }
  return out;
}

}  // namespace seqgame::oracle

#endif  // SEQGAME_ORACLE_HPP_
