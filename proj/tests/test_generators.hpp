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

#ifndef SEQGAME_TESTS_TEST_GENERATORS_HPP_
#define SEQGAME_TESTS_TEST_GENERATORS_HPP_

// Random instances shared by the unit and acceptance suites.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seqgame/efg.hpp"
#include "seqgame/rng.hpp"
#include "seqgame/sequence_form.hpp"
#include "seqgame/sparse.hpp"

namespace seqgame::testing {

// rows x cols with roughly `density` of the entries nonzero, values in [-1, 1].
inline SparseMatrix random_sparse(Rng& rng, std::size_t rows, std::size_t cols,
                                  double density = 0.4) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (rng.unit() < density) t.push_back({i, j, rng.uniform(-1.0, 1.0)});
    }
  }
  return SparseMatrix(rows, cols, std::move(t));
}

inline Vector random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  Vector v(n);
  for (double& d : v) d = rng.uniform(lo, hi);
  return v;
}

struct Constraints {
  SparseMatrix E;
  Vector e;
};

// Random treeplex of depth at most `max_depth` information sets, in tree
// encoding (root sequence 0). Each information set has 2 or 3 actions, and
// at most `max_infosets` sets keep 3^max_infosets under the enumeration cap.
inline Constraints random_treeplex(Rng& rng, int max_depth = 3, std::size_t max_infosets = 12) {
  std::vector<Triplet> t{{0, 0, 1.0}};
  std::size_t rows = 1;
  std::size_t seqs = 1;
  std::function<void(std::size_t, int)> grow = [&](std::size_t parent, int depth) {
    const std::size_t row = rows++;
    t.push_back({row, parent, -1.0});
    const std::size_t actions = 2 + rng.below(2);
    std::vector<std::size_t> children;
    for (std::size_t a = 0; a < actions; ++a) {
      children.push_back(seqs);
      t.push_back({row, seqs++, 1.0});
    }
    if (depth >= max_depth) return;
    for (std::size_t c : children) {
      const std::size_t below = rng.below(3) == 0 ? 1 + rng.below(2) : 0;
      for (std::size_t k = 0; k < below && rows <= max_infosets; ++k) grow(c, depth + 1);
    }
  };
  const std::size_t top = 1 + rng.below(2);
  for (std::size_t k = 0; k < top; ++k) grow(0, 1);
  Vector e(rows, 0.0);
  e[0] = 1.0;
  return {SparseMatrix(rows, seqs, std::move(t)), std::move(e)};
}

// Random two-player game tree with perfect recall. A player's information set
// is keyed by depth, the chance outcomes they observed, and their own past
// (infoset, action) pairs, so recall holds by construction while several
// nodes still share an information set whenever the opponent's moves or
// hidden chance outcomes differ.
inline ExtensiveFormGame random_efg(Rng& rng, int max_depth = 4) {
  ExtensiveFormGame g;
  struct View {
    std::string key[2];
  };
  std::function<NodeId(int, View)> build = [&](int depth, View view) -> NodeId {
    const std::uint64_t kind = depth >= max_depth ? 3 : rng.below(depth == 0 ? 3 : 4);
    if (kind == 3) return g.add_terminal(std::round(rng.uniform(-4.0, 4.0) * 4.0) / 4.0);
    if (kind == 0) {
      const std::size_t n = 2 + rng.below(2);
      Vector w(n);
      double total = 0.0;
      for (double& d : w) total += (d = 0.1 + rng.unit());
      const bool seen[2] = {rng.below(2) == 0, rng.below(2) == 0};
      std::vector<ChanceOutcome> outcomes;
      double assigned = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        View next = view;
        for (int k = 0; k < 2; ++k) {
          next.key[k] += seen[k] ? "c" + std::to_string(i) : "c?";
        }
        const double p = i + 1 == n ? 1.0 - assigned : w[i] / total;
        assigned += p;
        outcomes.push_back({p, build(depth + 1, next)});
      }
      return g.add_chance(std::move(outcomes));
    }
    const int player = static_cast<int>(kind);  // 1 or 2
    const int k = player - 1;
    const std::string infoset =
        "P" + std::to_string(player) + "@" + std::to_string(depth) + "|" + view.key[k];
    const std::size_t n = 2 + std::hash<std::string>{}(infoset) % 2;
    std::vector<Action> actions;
    for (std::size_t a = 0; a < n; ++a) {
      View next = view;
      next.key[k] += "[" + infoset + ">" + std::to_string(a) + "]";
      actions.push_back({"a" + std::to_string(a), build(depth + 1, next)});
    }
    return g.add_decision(player, infoset, std::move(actions));
  };
  g.set_root(build(0, View{}));
  return g;
}

// |pure strategies of player 1| * |pure strategies of player 2|.
inline double pure_strategy_pairs(const ExtensiveFormGame& efg) {
  double pairs = 1.0;
  for (const auto& [name, info] : efg.infosets()) pairs *= static_cast<double>(info.num_actions);
  return pairs;
}

// Matching pennies as a one-round game: player 2 does not see player 1's coin.
inline ExtensiveFormGame matching_pennies_efg() {
  ExtensiveFormGame g;
  std::vector<Action> p1;
  for (int a = 0; a < 2; ++a) {
    const NodeId hh = g.add_terminal(a == 0 ? 1.0 : -1.0);
    const NodeId ht = g.add_terminal(a == 0 ? -1.0 : 1.0);
    const NodeId p2 = g.add_decision(2, "P2", {{"heads", hh}, {"tails", ht}});
    p1.push_back({a == 0 ? "heads" : "tails", p2});
  }
  g.set_root(g.add_decision(1, "P1", std::move(p1)));
  return g;
}

inline SequenceFormGame matrix_game(const std::vector<Vector>& a) {
  return simplex_game(SparseMatrix::from_dense(a));
}

// Published equilibrium strategies for Kuhn poker, listed per card J, Q, K as
// player 1: [pass, fold after pass-bet, call after pass-bet, bet] and
// player 2: [fold to bet, call bet, check after pass, bet after pass].
inline constexpr std::array<double, 13> kReferenceX = {
    1, .759, .759, 0, .241, 1, .425, .575, 0, .275, 0, .275, .725};
inline constexpr std::array<double, 13> kReferenceY = {
    1, 1, 0, .667, .333, .667, .333, 1, 0, 0, 1, 0, 1};

// Sequence labels (as produced by to_sequence_form on kuhn_poker) in the
// order of kReferenceX / kReferenceY.
inline std::vector<std::string> reference_order(int player) {
  std::vector<std::string> out{"root"};
  for (const char* card : {"J", "Q", "K"}) {
    const std::string c = card;
    if (player == 1) {
      out.push_back("P1:" + c + ":/p");
      out.push_back("P1:" + c + ":pb/p");
      out.push_back("P1:" + c + ":pb/b");
      out.push_back("P1:" + c + ":/b");
    } else {
      out.push_back("P2:" + c + ":b/p");
      out.push_back("P2:" + c + ":b/b");
      out.push_back("P2:" + c + ":p/p");
      out.push_back("P2:" + c + ":p/b");
    }
  }
  return out;
}

// Reorders a reference Kuhn strategy into the compiled game's sequence order.
inline Vector from_reference(const std::array<double, 13>& reference,
                           const std::vector<std::string>& compiled_labels, int player) {
  const std::vector<std::string> order = reference_order(player);
  Vector out(compiled_labels.size(), 0.0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < compiled_labels.size(); ++j) {
      if (compiled_labels[j] == order[i]) out[j] = reference[i];
    }
  }
  return out;
}

}  // namespace seqgame::testing

#endif  // SEQGAME_TESTS_TEST_GENERATORS_HPP_
