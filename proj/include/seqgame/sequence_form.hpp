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

#ifndef SEQGAME_SEQUENCE_FORM_HPP_
#define SEQGAME_SEQUENCE_FORM_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "seqgame/errors.hpp"
#include "seqgame/sparse.hpp"

namespace seqgame {

// Optional human-readable names for sequences and constraint rows.
struct SequenceLabels {
  std::vector<std::string> sequences1;
  std::vector<std::string> sequences2;
  std::vector<std::string> infosets1;
  std::vector<std::string> infosets2;

  bool empty() const {
    return sequences1.empty() && sequences2.empty() && infosets1.empty() &&
           infosets2.empty();
  }
};

// Two-person zero-sum game in sequence form.
//
// Player 1 (x, maximizer) owns the rows of A, player 2 (y, minimizer) its
// columns. Strategy polytopes are Q_k = {z >= 0 : E_k z = e_k}.
struct SequenceFormGame {
  SparseMatrix A;   // n1 x n2, payoff to player 1
  SparseMatrix E1;  // l1 x n1
  SparseMatrix E2;  // l2 x n2
  Vector e1;
  Vector e2;
  SequenceLabels labels;

  std::size_t n1() const { return E1.cols(); }
  std::size_t n2() const { return E2.cols(); }
  std::size_t l1() const { return E1.rows(); }
  std::size_t l2() const { return E2.rows(); }
};

// Matrix game on simplexes: E_k = (1, ..., 1), e_k = (1).
inline SequenceFormGame simplex_game(SparseMatrix a) {
  auto ones_row = [](std::size_t n) {
    std::vector<Triplet> t;
    for (std::size_t j = 0; j < n; ++j) t.push_back({0, j, 1.0});
    return SparseMatrix(1, n, std::move(t));
  };
  SequenceFormGame g;
  g.E1 = ones_row(a.rows());
  g.E2 = ones_row(a.cols());
  g.e1 = {1.0};
  g.e2 = {1.0};
  g.A = std::move(a);
  return g;
}

// <x, A y>
inline double expected_value(const SequenceFormGame& game,
                             std::span<const double> x,
                             std::span<const double> y) {
  if (x.size() != game.A.rows() || y.size() != game.A.cols()) {
    throw DimensionError("expected_value: strategy lengths do not match A " +
                         game.A.shape());
  }
  return dot(x, game.A.matvec(y));
}

}  // namespace seqgame

#endif  // SEQGAME_SEQUENCE_FORM_HPP_
