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

#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "wfa/error.hpp"
#include "wfa/gram.hpp"
#include "wfa/hankel.hpp"
#include "wfa/sva.hpp"

namespace wfa {
namespace {

using testing::max_abs_diff;
using testing::scalar_wfa;
using testing::two_state_example;

// sqrt of the eigenvalues of Gp Gs for the two-state example: the
// characteristic polynomial has trace 9/49 and determinant 8/2401 - 8/3969.
Vector two_state_singular_values() {
  const double tr = 9.0 / 49;
  const double det = 8.0 / 2401 - 8.0 / 3969;
  const double disc = std::sqrt(tr * tr - 4 * det);
  Vector s(2);
  s << std::sqrt((tr + disc) / 2), std::sqrt((tr - disc) / 2);
  return s;
}

TEST(FactorSvd, ScalarGeometric) {
  GramPair g;
  g.gp = Matrix::Constant(1, 1, 4.0 / 3);
  g.gs = Matrix::Constant(1, 1, 4.0 / 3);
  const FactorSvd f = svd_from_rank_factorization(g);
  ASSERT_EQ(f.d.size(), 1);
  EXPECT_NEAR(f.d(0), 4.0 / 3, 1e-15);
  EXPECT_NEAR(f.qp(0, 0) * f.d(0) * f.qs(0, 0), 1.0, 1e-15);
}

TEST(FactorSvd, TwoStateValues) {
  const FactorSvd f = svd_from_rank_factorization(grams_direct(two_state_example()));
  const Vector expect = two_state_singular_values();
  EXPECT_NEAR(f.d(0), expect(0), 1e-14);
  EXPECT_NEAR(f.d(1), expect(1), 1e-14);
  EXPECT_NEAR(f.d(0), 0.420, 5e-4);
  EXPECT_NEAR(f.d(1), 0.0864, 5e-5);
  EXPECT_LE(max_abs_diff(f.qp * f.d.asDiagonal() * f.qs.transpose(), Matrix::Identity(2, 2)),
            1e-8);
}

TEST(FactorSvd, IdentityGrams) {
  GramPair g;
  g.gp = Matrix::Identity(3, 3);
  g.gs = Matrix::Identity(3, 3);
  const FactorSvd f = svd_from_rank_factorization(g);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(f.d(i), 1.0, 1e-15);
  EXPECT_LE(max_abs_diff(f.qp * f.qs.transpose(), Matrix::Identity(3, 3)), 1e-14);
  EXPECT_LE(max_abs_diff(f.qp.transpose() * f.qp, Matrix::Identity(3, 3)), 1e-14);
}

TEST(FactorSvd, RankDeficientRefused) {
  GramPair g;
  g.gp = Matrix::Zero(2, 2);
  g.gp(0, 0) = 1.0;
  g.gs = Matrix::Identity(2, 2);
  try {
    svd_from_rank_factorization(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotMinimal);
  }
}

TEST(ComputeSva, ScalarIsAlreadyCanonical) {
  const SvaForm s = compute_sva(scalar_wfa({0.5}));
  ASSERT_EQ(s.singular_values.size(), 1);
  EXPECT_NEAR(s.singular_values(0), 4.0 / 3, 1e-14);
  EXPECT_NEAR(s.wfa.transition(0)(0, 0), 0.5, 1e-15);
  const auto [r1, r2] = sva_residuals(s);
  EXPECT_LE(r1(0), 1e-15);
  EXPECT_LE(r2(0), 1e-15);
}

TEST(ComputeSva, TwoStateExample) {
  const Wfa w = two_state_example();
  const SvaForm s = compute_sva(w);
  const Vector expect = two_state_singular_values();
  EXPECT_NEAR(s.singular_values(0), expect(0), 1e-13);
  EXPECT_NEAR(s.singular_values(1), expect(1), 1e-13);
  EXPECT_TRUE(testing::agree_on_words(w, s.wfa, 6, [](double u, double v) {
    return std::abs(u - v) <= 1e-10;
  }));
  const auto [r1, r2] = sva_residuals(s);
  EXPECT_LE(r1.maxCoeff(), 1e-9 * s.singular_values(0));
  EXPECT_LE(r2.maxCoeff(), 1e-9 * s.singular_values(0));
}

TEST(ComputeSva, Idempotent) {
  testing::CorpusOptions opts;
  opts.count = 10;
  opts.seed = 41;
  for (const Wfa& w : testing::make_corpus(opts)) {
    const SvaForm once = compute_sva(w);
    const SvaForm twice = compute_sva(once.wfa);
    EXPECT_LE((once.wfa.initial() - twice.wfa.initial()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE((once.wfa.final() - twice.wfa.final()).cwiseAbs().maxCoeff(), 1e-9);
    for (std::size_t a = 0; a < w.symbols(); ++a)
      EXPECT_LE(max_abs_diff(once.wfa.transition(a), twice.wfa.transition(a)), 1e-9);
  }
}

TEST(ComputeSva, CanonicalAndFunctionPreserving) {
  testing::CorpusOptions opts;
  opts.count = 30;
  opts.seed = 42;
  for (const Wfa& w : testing::make_corpus(opts)) {
    const SvaForm s = compute_sva(w);
    const double s1 = s.singular_values(0);
    const Matrix diag = s.singular_values.asDiagonal();
    const GramPair g = grams_direct(s.wfa);
    EXPECT_LE(max_abs_diff(g.gp, diag), 1e-7 * s1);
    EXPECT_LE(max_abs_diff(g.gs, diag), 1e-7 * s1);
    const auto [r1, r2] = sva_residuals(s);
    EXPECT_LE(r1.maxCoeff(), 1e-7 * s1);
    EXPECT_LE(r2.maxCoeff(), 1e-7 * s1);
    EXPECT_TRUE(testing::agree_relative(w, s.wfa, 6, 1e-9));
    EXPECT_TRUE(off_diagonal_bounds(s).all_satisfied);
  }
}

TEST(ComputeSva, MinimizesFirst) {
  const Wfa padded = testing::pad_dead_states(two_state_example(), 2);
  const SvaForm s = compute_sva(padded);
  EXPECT_EQ(s.wfa.states(), 2);
  EXPECT_NEAR(s.singular_values(1), two_state_singular_values()(1), 1e-12);
}

TEST(ComputeSva, SignsAreNormalized) {
  const SvaForm s = compute_sva(two_state_example());
  for (Eigen::Index j = 0; j < 2; ++j) EXPECT_GT(s.wfa.initial()(j), 0.0);
}

TEST(ComputeSva, ForwardVectorsHaveDiagonalGram) {
  const SvaForm s = compute_sva(two_state_example());
  const auto partial = oracle::forward_gram_partial(s.wfa, 6);
  // tail after length 6 is bounded by (2/9)^7 / (1 - 2/9) times a small constant
  EXPECT_LE(max_abs_diff(partial.gram, Matrix(s.singular_values.asDiagonal())), 1e-4);
}

TEST(SvaResiduals, PerturbationDetected) {
  SvaForm s = compute_sva(two_state_example());
  std::vector<Matrix> mats = s.wfa.transitions();
  mats[0](0, 1) += 0.1;
  const SvaForm bad{Wfa(s.wfa.alphabet(), s.wfa.initial(), s.wfa.final(), mats),
                    s.singular_values};
  const auto [r1, r2] = sva_residuals(bad);
  EXPECT_GT(std::max(r1.maxCoeff(), r2.maxCoeff()), 1e-3);
}

TEST(HankelSingularValues, Examples) {
  const Vector s = hankel_singular_values(two_state_example());
  EXPECT_NEAR(s(0), two_state_singular_values()(0), 1e-13);
  EXPECT_NEAR(s(1), two_state_singular_values()(1), 1e-13);
  const Vector g = hankel_singular_values(scalar_wfa({0.5}));
  EXPECT_NEAR(g(0), 4.0 / 3, 1e-14);
}

TEST(HankelSingularValues, FiniteBlockConvergesFromBelow) {
  const Wfa w = two_state_example();
  const Vector s = hankel_singular_values(w);
  Vector prev = Vector::Zero(2);
  for (int depth = 1; depth <= 8; ++depth) {
    const Vector b = oracle::block_singular_values(oracle::hankel_block(w, depth, depth));
    for (int i = 0; i < 2; ++i) {
      EXPECT_GE(b(i), prev(i) - 1e-15);
      EXPECT_LE(b(i), s(i) + 1e-12);
    }
    prev = b.head(2);
  }
  EXPECT_LE((prev - s).cwiseAbs().maxCoeff(), 1e-3 * s(0));
  // Frobenius norm of the block approaches sum s_i^2
  const auto block = oracle::hankel_block(w, 8, 8);
  EXPECT_NEAR(block.values.squaredNorm(), s.squaredNorm(), 1e-3);
}

TEST(OffDiagonalBounds, Examples) {
  const OffDiagonalBounds one = off_diagonal_bounds(compute_sva(scalar_wfa({0.5})));
  EXPECT_TRUE(one.all_satisfied);
  EXPECT_NEAR(one.bound(0, 0), 1.0, 1e-15);

  SvaForm s = compute_sva(two_state_example());
  EXPECT_TRUE(off_diagonal_bounds(s).all_satisfied);
  const OffDiagonalBounds b = off_diagonal_bounds(s);
  std::vector<Matrix> mats = s.wfa.transitions();
  mats[1](1, 0) = 2.0 * b.bound(1, 0);
  const SvaForm bad{Wfa(s.wfa.alphabet(), s.wfa.initial(), s.wfa.final(), mats),
                    s.singular_values};
  const OffDiagonalBounds flagged = off_diagonal_bounds(bad);
  EXPECT_FALSE(flagged.all_satisfied);
  EXPECT_FALSE(flagged.satisfied[1](1, 0));
  EXPECT_TRUE(flagged.satisfied[0](1, 0));
}

}  // namespace
}  // namespace wfa
