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

#ifndef SEQGAME_RANDOM_GAMES_HPP_
#define SEQGAME_RANDOM_GAMES_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seqgame/errors.hpp"
#include "seqgame/rng.hpp"
#include "seqgame/sequence_form.hpp"

namespace seqgame {

// Matrix game on simplexes with payoffs drawn uniformly from [-1, 1], row by
// row, from Rng(seed).
inline SequenceFormGame random_matrix_game(std::size_t n1, std::size_t n2,
                                           std::uint64_t seed) {
  if (n1 == 0 || n2 == 0) {
    throw PreconditionError("random_matrix_game: dimensions must be positive");
  }
  Rng rng(seed);
  std::vector<Triplet> t;
  t.reserve(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) t.push_back({i, j, rng.uniform(-1.0, 1.0)});
  }
  return simplex_game(SparseMatrix(n1, n2, std::move(t)));
}

}  // namespace seqgame

#endif  // SEQGAME_RANDOM_GAMES_HPP_
