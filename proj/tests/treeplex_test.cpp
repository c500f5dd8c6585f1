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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "seqgame/efg.hpp"
#include "seqgame/kuhn.hpp"
#include "seqgame/oracle.hpp"
#include "seqgame/treeplex.hpp"
#include "test_generators.hpp"

namespace seqgame {
namespace {

const CompiledGame& kuhn() {
  static const CompiledGame compiled = to_sequence_form(kuhn_poker());
  return compiled;
}

SparseMatrix ones_row(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t j = 0; j < n; ++j) t.push_back({0, j, 1.0});
  return SparseMatrix(1, n, std::move(t));
}

TEST(Validate, AcceptsKuhnAndSimplexGames) {
  EXPECT_TRUE(validate_sequence_form(kuhn().game).empty());
  EXPECT_TRUE(validate_sequence_form(testing::matrix_game({{1, 2, 3}, {4, 5, 6}})).empty());
}

TEST(Validate, FlagsRowWithTwoParents) {
  SequenceFormGame g = testing::matrix_game({{1, 0, 0}});
  // Player 2: root + one information set whose row has two -1 entries.
  g.E2 = SparseMatrix(2, 3, {{0, 0, 1}, {1, 0, -1}, {1, 1, -1}, {1, 2, 1}});
  g.e2 = {1, 0};
  const auto v = validate_sequence_form(g);
  ASSERT_FALSE(v.empty());
  const auto cites_row = std::count_if(v.begin(), v.end(), [](const Violation& x) {
    return x.object == "E2" && x.row == 1u && !x.col &&
           x.rule.find("exactly one -1") != std::string::npos;
  });
  EXPECT_EQ(cites_row, 1);
}

TEST(Validate, NamesBadRootConstraintEntry) {
  SequenceFormGame g = kuhn().game;
  g.e1[0] = 0.0;
  const auto v = validate_sequence_form(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].describe().rfind("e1[0]", 0), 0u);
}

TEST(Validate, FlagsShapeMismatch) {
  SequenceFormGame g = testing::matrix_game({{1, 2}, {3, 4}});
  g.E2 = ones_row(3);
  const auto v = validate_sequence_form(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].object, "A");
}

TEST(TreeplexIndex, RootOnly) {
  const TreeplexIndex index = build_treeplex_index(SparseMatrix::identity(1), {1.0});
  EXPECT_FALSE(index.simplex_mode());
  EXPECT_TRUE(index.infosets().empty());
  EXPECT_EQ(index.num_sequences(), 1u);
}

TEST(TreeplexIndex, SimplexMode) {
  const TreeplexIndex index = build_treeplex_index(ones_row(3), {1.0});
  EXPECT_TRUE(index.simplex_mode());
  ASSERT_EQ(index.infosets().size(), 1u);
  EXPECT_FALSE(index.infosets()[0].parent);
  EXPECT_EQ(index.infosets()[0].children, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(TreeplexIndex, KuhnPlayerOneReproducesE) {
  const SequenceFormGame& g = kuhn().game;
  const TreeplexIndex index = build_treeplex_index(g.E1, g.e1);
  ASSERT_EQ(index.infosets().size(), 6u);
  std::vector<bool> seen(g.n1(), false);
  std::vector<std::size_t> position(g.l1(), 0);
  for (std::size_t i = 0; i < index.infosets().size(); ++i) {
    const InfosetNode& node = index.infosets()[i];
    position[node.row] = i;
    ASSERT_TRUE(node.parent);
    EXPECT_EQ(node.children.size(), 2u);
    EXPECT_EQ(g.E1.at(node.row, *node.parent), -1.0);
    for (std::size_t c = 0; c < g.n1(); ++c) {
      const bool child = std::find(node.children.begin(), node.children.end(), c) !=
                         node.children.end();
      EXPECT_EQ(g.E1.at(node.row, c) == 1.0, child);
      if (child) seen[c] = true;
    }
  }
  // Children partition the non-root sequences.
  EXPECT_EQ(std::count(seen.begin(), seen.end(), true), 12);
  EXPECT_FALSE(seen[0]);
  // Parents come first.
  for (const InfosetNode& node : index.infosets()) {
    for (std::size_t c : node.children) {
      for (std::size_t below : index.infosets_below(c)) {
        EXPECT_LT(position[node.row], below);
      }
    }
  }
}

TEST(TreeplexIndex, RejectsCycles) {
  // Row 1 hangs below sequence 3, which row 2 issues; row 2 hangs below
  // sequence 1, which row 1 issues.
  const SparseMatrix e(3, 5, {{0, 0, 1}, {1, 3, -1}, {1, 1, 1}, {1, 2, 1},
                              {2, 1, -1}, {2, 3, 1}, {2, 4, 1}});
  EXPECT_THROW(build_treeplex_index(e, {1, 0, 0}), StructureError);
}

TEST(BestResponse, SimplexPicksLowestArgmax) {
  const TreeplexIndex index = build_treeplex_index(ones_row(4), {1.0});
  const BestResponse br = best_response(index, Vector{0.1, 0.9, 0.3, 0.9}, Sense::kMax);
  EXPECT_EQ(br.value, 0.9);
  EXPECT_EQ(br.plan.values, (Vector{0, 1, 0, 0}));
  const BestResponse worst = best_response(index, Vector{0.1, 0.9, 0.1, 0.9}, Sense::kMin);
  EXPECT_EQ(worst.value, 0.1);
  EXPECT_EQ(worst.plan.values, (Vector{1, 0, 0, 0}));
}

TEST(BestResponse, ZeroGradientGivesZeroAndFirstChoices) {
  const SequenceFormGame& g = kuhn().game;
  const TreeplexIndex index = build_treeplex_index(g.E1, g.e1);
  const BestResponse br = best_response(index, Vector(g.n1(), 0.0), Sense::kMax);
  EXPECT_EQ(br.value, 0.0);
  for (const InfosetNode& node : index.infosets()) {
    const double mass = br.plan.values[*node.parent];
    EXPECT_EQ(br.plan.values[node.children[0]], mass);
    EXPECT_EQ(br.plan.values[node.children[1]], 0.0);
  }
}

TEST(BestResponse, KuhnAgainstReferenceEquilibriumMatchesEnumeration) {
  const SequenceFormGame& g = kuhn().game;
  const Vector y = testing::from_reference(testing::kReferenceY, g.labels.sequences2, 2);
  const TreeplexIndex index = build_treeplex_index(g.E1, g.e1);
  const Vector grad = g.A.matvec(y);
  const BestResponse br = best_response(index, grad, Sense::kMax);
  const double brute = oracle::vertex_optimum(oracle::enumerate_vertices(index), grad, Sense::kMax);
  EXPECT_EQ(br.value, brute);
}

TEST(BestResponse, PlanIsFeasibleAndAchievesValue) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const testing::Constraints c = testing::random_treeplex(rng);
    const TreeplexIndex index = build_treeplex_index(c.E, c.e);
    const Vector g = testing::random_vector(rng, c.E.cols());
    for (Sense sense : {Sense::kMax, Sense::kMin}) {
      const BestResponse br = best_response(index, g, sense);
      Vector r = c.E.matvec(br.plan.values);
      for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i], c.e[i]);
      for (double v : br.plan.values) EXPECT_TRUE(v == 0.0 || v == 1.0);
      EXPECT_NEAR(dot(g, br.plan.values), br.value, 1e-12);
    }
  }
}

TEST(BestResponse, EqualsVertexEnumerationOnRandomTreeplexes) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const testing::Constraints c = testing::random_treeplex(rng);
    const TreeplexIndex index = build_treeplex_index(c.E, c.e);
    const oracle::VertexSet vertices = oracle::enumerate_vertices(index);
    const Vector g = testing::random_vector(rng, c.E.cols());
    EXPECT_EQ(best_response(index, g, Sense::kMax).value,
              oracle::vertex_optimum(vertices, g, Sense::kMax));
    EXPECT_EQ(best_response(index, g, Sense::kMin).value,
              oracle::vertex_optimum(vertices, g, Sense::kMin));
  }
}

TEST(DualityGap, ZeroPayoffs) {
  SequenceFormGame g = kuhn().game;
  g.A = SparseMatrix(g.n1(), g.n2(), {});
  const Vector x = testing::from_reference(testing::kReferenceX, g.labels.sequences1, 1);
  const Vector y = testing::from_reference(testing::kReferenceY, g.labels.sequences2, 2);
  EXPECT_EQ(duality_gap(g, x, y).gap, 0.0);
}

TEST(DualityGap, MatchingPenniesUniform) {
  const SequenceFormGame g = testing::matrix_game({{1, -1}, {-1, 1}});
  const GapResult r = duality_gap(g, Vector{0.5, 0.5}, Vector{0.5, 0.5});
  EXPECT_EQ(r.gap, 0.0);
  EXPECT_FALSE(r.feasibility_warning);
}

TEST(DualityGap, ReferenceKuhnEquilibrium) {
  const SequenceFormGame& g = kuhn().game;
  const Vector x = testing::from_reference(testing::kReferenceX, g.labels.sequences1, 1);
  const Vector y = testing::from_reference(testing::kReferenceY, g.labels.sequences2, 2);
  const GapResult r = duality_gap(g, x, y);
  EXPECT_GE(r.gap, 0.0);
  EXPECT_LE(r.gap, 1e-3);
  EXPECT_FALSE(r.feasibility_warning);
  EXPECT_NEAR(expected_value(g, x, y), -0.05555, 5e-5);
}

TEST(DualityGap, WarnsOnInfeasibleInput) {
  const SequenceFormGame g = testing::matrix_game({{1, -1}, {-1, 1}});
  EXPECT_TRUE(duality_gap(g, Vector{0.6, 0.5}, Vector{0.5, 0.5}).feasibility_warning);
}

TEST(DualityGap, WeakDualityOnFeasiblePoints) {
  const SequenceFormGame& g = kuhn().game;
  const TreeplexIndex i1 = build_treeplex_index(g.E1, g.e1);
  const TreeplexIndex i2 = build_treeplex_index(g.E2, g.e2);
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x = normalize_to_polytope(i1, testing::random_vector(rng, g.n1(), 0, 1)).values;
    const Vector y = normalize_to_polytope(i2, testing::random_vector(rng, g.n2(), 0, 1)).values;
    EXPECT_GE(duality_gap(g, i1, i2, x, y).gap, -1e-15);
  }
}

TEST(SimplexGap, Examples) {
  const SparseMatrix pennies = SparseMatrix::from_dense({{1, -1}, {-1, 1}});
  EXPECT_EQ(simplex_gap(SparseMatrix(2, 3, {}), Vector{0.5, 0.5}, Vector{0.2, 0.3, 0.5}), 0.0);
  EXPECT_EQ(simplex_gap(pennies, Vector{0.5, 0.5}, Vector{0.5, 0.5}), 0.0);
  EXPECT_EQ(simplex_gap(pennies, Vector{1, 0}, Vector{1, 0}), 2.0);
}

TEST(SimplexGap, AgreesWithTreeplexGap) {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n1 = 1 + rng.below(6);
    const std::size_t n2 = 1 + rng.below(6);
    const SequenceFormGame g = simplex_game(testing::random_sparse(rng, n1, n2, 0.7));
    const TreeplexIndex i1 = build_treeplex_index(g.E1, g.e1);
    const TreeplexIndex i2 = build_treeplex_index(g.E2, g.e2);
    const Vector x = normalize_to_polytope(i1, testing::random_vector(rng, n1, 0, 1)).values;
    const Vector y = normalize_to_polytope(i2, testing::random_vector(rng, n2, 0, 1)).values;
    EXPECT_NEAR(simplex_gap(g.A, x, y), duality_gap(g, i1, i2, x, y).gap, 1e-12);
  }
}

TEST(FeasibilityResiduals, Examples) {
  const SequenceFormGame& g = kuhn().game;
  const TreeplexIndex i1 = build_treeplex_index(g.E1, g.e1);
  const Vector pure = best_response(i1, Vector(g.n1(), 1.0), Sense::kMax).plan.values;
  const FeasibilityResiduals exact = feasibility_residuals(g, pure, Vector(g.n2(), 0.0));
  EXPECT_EQ(exact.feas_x, 0.0);
  EXPECT_EQ(exact.min_x, 0.0);
  EXPECT_EQ(exact.feas_y, 1.0);
  EXPECT_EQ(exact.min_y, 0.0);

  const Vector x = testing::from_reference(testing::kReferenceX, g.labels.sequences1, 1);
  const Vector y = testing::from_reference(testing::kReferenceY, g.labels.sequences2, 2);
  const FeasibilityResiduals reference = feasibility_residuals(g, x, y);
  // The published vectors are rounded to three decimals; the rounding keeps
  // every information set balanced.
  EXPECT_LE(reference.feas_x, 1e-12);
  EXPECT_LE(reference.feas_y, 1e-12);
}

TEST(NormalizeToPolytope, Examples) {
  const TreeplexIndex simplex = build_treeplex_index(ones_row(2), {1.0});
  EXPECT_EQ(normalize_to_polytope(simplex, Vector{0.2, 0.2}).values, (Vector{0.5, 0.5}));
  EXPECT_EQ(normalize_to_polytope(simplex, Vector{-0.1, 0.3}).values, (Vector{0.0, 1.0}));
  EXPECT_EQ(normalize_to_polytope(simplex, Vector{-0.1, 0.0}).values, (Vector{0.5, 0.5}));

  const SequenceFormGame& g = kuhn().game;
  const TreeplexIndex i1 = build_treeplex_index(g.E1, g.e1);
  const Vector x = testing::from_reference(testing::kReferenceX, g.labels.sequences1, 1);
  const Vector again = normalize_to_polytope(i1, x).values;
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(again[i], x[i], 1e-15);
}

TEST(NormalizeToPolytope, OutputIsFeasible) {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const testing::Constraints c = testing::random_treeplex(rng);
    const TreeplexIndex index = build_treeplex_index(c.E, c.e);
    const Vector z = normalize_to_polytope(index, testing::random_vector(rng, c.E.cols(), -0.5, 1.5)).values;
    Vector r = c.E.matvec(z);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c.e[i];
    EXPECT_LE(norm_inf(r), 1e-12);
    EXPECT_GE(*std::min_element(z.begin(), z.end()), 0.0);
  }
}

}  // namespace
}  // namespace seqgame
