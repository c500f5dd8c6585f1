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

#ifndef SEQGAME_TREEPLEX_HPP_
#define SEQGAME_TREEPLEX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqgame/errors.hpp"
#include "seqgame/sequence_form.hpp"
#include "seqgame/sparse.hpp"

namespace seqgame {

// Residual infinity-norm under which iterates count as feasible for gap
// reporting.
inline constexpr double kFeasibilityTolerance = 1e-8;

struct Violation {
  std::string object;  // "A", "E1", "e2", ...
  std::optional<std::size_t> row;
  std::optional<std::size_t> col;
  std::string rule;

  std::string describe() const {
    std::string out = object;
    if (row && col) {
      out += "[" + std::to_string(*row) + "][" + std::to_string(*col) + "]";
    } else if (row) {
      out += (object.size() > 0 && object[0] == 'e') ? "[" : " row ";
      out += std::to_string(*row);
      if (object.size() > 0 && object[0] == 'e') out += "]";
    } else if (col) {
      out += " column " + std::to_string(*col);
    }
    return out + ": " + rule;
  }
};

namespace detail {

// Checks the constraint structure of one player. `player` is 1 or 2.
inline std::vector<Violation> validate_player(const SparseMatrix& E,
                                              const Vector& e, int player) {
  const std::string mname = "E" + std::to_string(player);
  const std::string vname = "e" + std::to_string(player);
  std::vector<Violation> out;
  const std::size_t l = E.rows();
  const std::size_t n = E.cols();
  if (l == 0 || n == 0) {
    out.push_back({mname, {}, {}, "must have at least one row and one column"});
    return out;
  }
  if (e.size() != l) {
    out.push_back({vname, {}, {},
                   "length " + std::to_string(e.size()) + " differs from " +
                       mname + " row count " + std::to_string(l)});
    return out;
  }
  if (e[0] != 1.0) out.push_back({vname, 0, {}, "first entry must be 1"});
  for (std::size_t r = 1; r < l; ++r) {
    if (e[r] != 0.0) out.push_back({vname, r, {}, "entry must be 0"});
  }

  const std::vector<Triplet> entries = E.triplets();
  if (l == 1) {
    // Simplex encoding: the single row is both root constraint and sole
    // information set.
    std::vector<bool> ok(n, false);
    for (const Triplet& t : entries) ok[t.col] = t.value == 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!ok[c]) out.push_back({mname, 0, c, "one-row constraint must be all ones"});
    }
    return out;
  }

  bool well_formed = true;
  bool root_seen = false;
  std::vector<std::size_t> minus(l, 0), plus(l, 0), col_plus(n, 0);
  std::vector<std::optional<std::size_t>> parent_col(l);
  std::vector<std::optional<std::size_t>> owner(n);
  for (const Triplet& t : entries) {
    if (t.row == 0) {
      if (t.col == 0 && t.value == 1.0) {
        root_seen = true;
      } else {
        out.push_back({mname, 0, t.col, "root row must have a single +1 in column 0"});
        well_formed = false;
      }
    }
    if (t.value == -1.0) {
      ++minus[t.row];
      parent_col[t.row] = t.col;
    } else if (t.value == 1.0) {
      ++plus[t.row];
      ++col_plus[t.col];
      owner[t.col] = t.row;
    } else {
      out.push_back({mname, t.row, t.col, "entries must be -1, 0 or +1"});
      well_formed = false;
    }
  }
  if (!root_seen) {
    out.push_back({mname, 0, 0, "root row must have a single +1 in column 0"});
    well_formed = false;
  }
  for (std::size_t r = 1; r < l; ++r) {
    if (minus[r] != 1) {
      out.push_back({mname, r, {},
                     "must contain exactly one -1 (found " +
                         std::to_string(minus[r]) + ")"});
      well_formed = false;
    }
    if (plus[r] == 0) {
      out.push_back({mname, r, {}, "must contain at least one +1"});
      well_formed = false;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (col_plus[c] != 1) {
      out.push_back({mname, {}, c,
                     "must contain exactly one +1 (found " +
                         std::to_string(col_plus[c]) + ")"});
      well_formed = false;
    }
  }
  if (!well_formed) return out;

  // Follow parent links: row -> parent sequence -> row owning that sequence.
  for (std::size_t r = 1; r < l; ++r) {
    std::size_t cur = r;
    std::size_t steps = 0;
    while (cur != 0 && steps <= l) {
      cur = *owner[*parent_col[cur]];
      ++steps;
    }
    if (cur != 0) {
      out.push_back({mname, r, {}, "parent chain is cyclic or never reaches row 0"});
    }
  }
  return out;
}

}  // namespace detail

// Lists every structural problem of the game. Empty iff the game is valid.
inline std::vector<Violation> validate_sequence_form(const SequenceFormGame& game) {
  std::vector<Violation> out = detail::validate_player(game.E1, game.e1, 1);
  std::vector<Violation> p2 = detail::validate_player(game.E2, game.e2, 2);
  out.insert(out.end(), p2.begin(), p2.end());
  if (game.A.rows() != game.E1.cols() || game.A.cols() != game.E2.cols()) {
    out.push_back({"A", {}, {},
                   "shape " + game.A.shape() + " must be n1 x n2 = " +
                       std::to_string(game.E1.cols()) + "x" +
                       std::to_string(game.E2.cols())});
  }
  return out;
}

inline std::string describe(const std::vector<Violation>& violations) {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.describe();
  }
  return out;
}

// K = [[A, -E1^T], [E2, 0]], mapping (y; p) to (x-space; q-space).
inline SparseMatrix build_K(const SequenceFormGame& game) {
  if (auto v = validate_sequence_form(game); !v.empty()) {
    throw ValidationError("build_K: invalid game: " + describe(v));
  }
  const std::size_t n1 = game.n1();
  const std::size_t n2 = game.n2();
  std::vector<Triplet> t;
  t.reserve(game.A.nnz() + game.E1.nnz() + game.E2.nnz());
  for (const Triplet& a : game.A.triplets()) t.push_back(a);
  for (const Triplet& e : game.E1.triplets()) {
    t.push_back({e.col, n2 + e.row, -e.value});
  }
  for (const Triplet& e : game.E2.triplets()) {
    t.push_back({n1 + e.row, e.col, e.value});
  }
  return SparseMatrix(n1 + game.l2(), n2 + game.l1(), std::move(t));
}

// One information set of the treeplex: the children share the probability
// mass of the parent sequence (or unit mass when the set has no parent, which
// only happens for the one-row simplex encoding).
struct InfosetNode {
  std::size_t row = 0;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;  // ascending
};

// Tree parse of (E, e) for one player.
class TreeplexIndex {
 public:
  TreeplexIndex() = default;

  // `infosets` must list parents before children; `root` is empty only for
  // the one-row simplex encoding.
  TreeplexIndex(std::size_t num_sequences, std::optional<std::size_t> root,
                std::vector<InfosetNode> infosets)
      : num_sequences_(num_sequences),
        root_(root),
        infosets_(std::move(infosets)),
        below_(num_sequences) {
    for (std::size_t i = 0; i < infosets_.size(); ++i) {
      if (infosets_[i].parent) below_[*infosets_[i].parent].push_back(i);
    }
  }

  std::size_t num_sequences() const { return num_sequences_; }
  bool simplex_mode() const { return !root_.has_value(); }
  std::optional<std::size_t> root() const { return root_; }

  // Parents precede children.
  const std::vector<InfosetNode>& infosets() const { return infosets_; }

  // Positions in infosets() of the sets directly below a sequence.
  const std::vector<std::size_t>& infosets_below(std::size_t sequence) const {
    return below_[sequence];
  }

 private:
  std::size_t num_sequences_ = 0;
  std::optional<std::size_t> root_;
  std::vector<InfosetNode> infosets_;
  std::vector<std::vector<std::size_t>> below_;
};

inline TreeplexIndex build_treeplex_index(const SparseMatrix& E, const Vector& e,
                                          int player = 1) {
  if (auto v = detail::validate_player(E, e, player); !v.empty()) {
    throw StructureError("build_treeplex_index: " + describe(v));
  }
  const std::size_t l = E.rows();
  const std::size_t n = E.cols();

  if (l == 1 && n > 1) {
    InfosetNode node;
    node.row = 0;
    for (std::size_t c = 0; c < n; ++c) node.children.push_back(c);
    return TreeplexIndex(n, std::nullopt, {std::move(node)});
  }

  std::vector<InfosetNode> by_row(l);
  for (const Triplet& t : E.triplets()) {
    if (t.row == 0) continue;
    by_row[t.row].row = t.row;
    if (t.value < 0) {
      by_row[t.row].parent = t.col;
    } else {
      by_row[t.row].children.push_back(t.col);
    }
  }
  std::vector<std::vector<std::size_t>> rows_below(n);
  for (std::size_t r = 1; r < l; ++r) rows_below[*by_row[r].parent].push_back(r);

  // Breadth-first from the root sequence.
  std::vector<InfosetNode> ordered;
  std::deque<std::size_t> frontier(rows_below[0].begin(), rows_below[0].end());
  while (!frontier.empty()) {
    const std::size_t r = frontier.front();
    frontier.pop_front();
    for (std::size_t c : by_row[r].children) {
      frontier.insert(frontier.end(), rows_below[c].begin(), rows_below[c].end());
    }
    ordered.push_back(by_row[r]);
  }
  if (ordered.size() != l - 1) {
    throw StructureError("build_treeplex_index: information sets unreachable from the root");
  }
  return TreeplexIndex(n, 0, std::move(ordered));
}

struct RealizationPlan {
  Vector values;
  int player = 1;
};

enum class Sense { kMax, kMin };

struct BestResponse {
  double value = 0.0;
  RealizationPlan plan;
};

// Optimizes <gradient, z> over the treeplex by a bottom-up pass. Returns a
// pure (0/1) realization plan; ties go to the lowest sequence index.
inline BestResponse best_response(const TreeplexIndex& index,
                                  std::span<const double> gradient, Sense sense,
                                  int player = 1) {
  if (gradient.size() != index.num_sequences()) {
    throw DimensionError("best_response: gradient length " +
                         std::to_string(gradient.size()) + " but " +
                         std::to_string(index.num_sequences()) + " sequences");
  }
  const auto& sets = index.infosets();
  Vector seq_value(gradient.begin(), gradient.end());
  std::vector<std::size_t> choice(sets.size());
  for (std::size_t i = sets.size(); i-- > 0;) {
    const InfosetNode& node = sets[i];
    std::size_t best = node.children.front();
    for (std::size_t c : node.children) {
      const bool better = sense == Sense::kMax ? seq_value[c] > seq_value[best]
                                               : seq_value[c] < seq_value[best];
      if (better) best = c;
    }
    choice[i] = best;
    if (node.parent) seq_value[*node.parent] += seq_value[best];
  }

  BestResponse out;
  out.plan.player = player;
  out.plan.values.assign(index.num_sequences(), 0.0);
  if (index.root()) out.plan.values[*index.root()] = 1.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const double mass = sets[i].parent ? out.plan.values[*sets[i].parent] : 1.0;
    out.plan.values[choice[i]] = mass;
  }
  out.value = dot(gradient, out.plan.values);
  return out;
}

struct GapResult {
  double gap = 0.0;
  // Set when an input misses its polytope by more than kFeasibilityTolerance.
  bool feasibility_warning = false;
};

struct FeasibilityResiduals {
  double feas_x = 0.0;  // |E1 x - e1|_inf
  double feas_y = 0.0;  // |E2 y - e2|_inf
  double min_x = 0.0;
  double min_y = 0.0;
};

inline FeasibilityResiduals feasibility_residuals(const SequenceFormGame& game,
                                                  std::span<const double> x,
                                                  std::span<const double> y) {
  if (x.size() != game.n1() || y.size() != game.n2()) {
    throw DimensionError("feasibility_residuals: strategy length mismatch");
  }
  auto residual = [](const SparseMatrix& E, std::span<const double> z,
                     const Vector& e) {
    Vector r = E.matvec(z);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= e[i];
    return norm_inf(r);
  };
  FeasibilityResiduals out;
  out.feas_x = residual(game.E1, x, game.e1);
  out.feas_y = residual(game.E2, y, game.e2);
  out.min_x = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  out.min_y = y.empty() ? 0.0 : *std::min_element(y.begin(), y.end());
  return out;
}

inline GapResult duality_gap(const SequenceFormGame& game,
                             const TreeplexIndex& index1,
                             const TreeplexIndex& index2,
                             std::span<const double> x,
                             std::span<const double> y) {
  const Vector ay = game.A.matvec(y);
  const Vector atx = game.A.transpose_matvec(x);
  GapResult out;
  out.gap = best_response(index1, ay, Sense::kMax, 1).value -
            best_response(index2, atx, Sense::kMin, 2).value;
  const FeasibilityResiduals f = feasibility_residuals(game, x, y);
  out.feasibility_warning =
      f.feas_x > kFeasibilityTolerance || f.feas_y > kFeasibilityTolerance ||
      f.min_x < -kFeasibilityTolerance || f.min_y < -kFeasibilityTolerance;
  return out;
}

// max_u <u, Ay> - min_v <x, Av> over the two strategy polytopes.
inline GapResult duality_gap(const SequenceFormGame& game,
                             std::span<const double> x,
                             std::span<const double> y) {
  return duality_gap(game, build_treeplex_index(game.E1, game.e1, 1),
                     build_treeplex_index(game.E2, game.e2, 2), x, y);
}

// Matrix-game gap: max_i (Ay)_i - min_j (A^T x)_j.
inline double simplex_gap(const SparseMatrix& A, std::span<const double> x,
                          std::span<const double> y) {
  const Vector ay = A.matvec(y);
  const Vector atx = A.transpose_matvec(x);
  return *std::max_element(ay.begin(), ay.end()) -
         *std::min_element(atx.begin(), atx.end());
}

// Maps an approximately feasible vector onto the polytope: clip negatives,
// pin the root to 1, then rescale each information set's children to the
// mass of their parent (uniform split when all children are zero).
inline RealizationPlan normalize_to_polytope(const TreeplexIndex& index,
                                             std::span<const double> z,
                                             int player = 1) {
  if (z.size() != index.num_sequences()) {
    throw DimensionError("normalize_to_polytope: length mismatch");
  }
  RealizationPlan plan;
  plan.player = player;
  plan.values.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) plan.values[i] = std::max(z[i], 0.0);
  if (index.root()) plan.values[*index.root()] = 1.0;
  for (const InfosetNode& node : index.infosets()) {
    const double mass = node.parent ? plan.values[*node.parent] : 1.0;
    double sum = 0.0;
    for (std::size_t c : node.children) sum += plan.values[c];
    if (sum > 0.0) {
      if (sum != mass) {
        const double scale = mass / sum;
        for (std::size_t c : node.children) plan.values[c] *= scale;
      }
    } else {
      const double share = mass / static_cast<double>(node.children.size());
      for (std::size_t c : node.children) plan.values[c] = share;
    }
  }
  return plan;
}

}  // namespace seqgame

#endif  // SEQGAME_TREEPLEX_HPP_
