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

#ifndef SEQGAME_RNG_HPP_
#define SEQGAME_RNG_HPP_

#include <cstdint>
#include <random>

namespace seqgame {

// Portable uniform sampling on top of std::mt19937_64.
//
// The engine's output sequence is fixed by the C++ standard, but the standard
// distributions are not, so the scaling to reals is done here: the top 53 bits
// of each draw are mapped onto [0, 1] with both endpoints reachable. Traces and
// generated games are therefore identical across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the closed interval [0, 1].
  double unit() {
    constexpr double kScale = 1.0 / static_cast<double>((1ULL << 53) - 1);
    return static_cast<double>(engine_() >> 11) * kScale;
  }

  // Uniform on the closed interval [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [0, n). Uses rejection to avoid modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % n;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace seqgame

#endif  // SEQGAME_RNG_HPP_
