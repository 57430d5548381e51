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
#include <limits>

#include <gtest/gtest.h>

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "wfa/approx.hpp"
#include "wfa/error.hpp"
#include "wfa/hankel.hpp"
#include "wfa/sva.hpp"

namespace wfa {
namespace {

using testing::scalar_wfa;
using testing::two_state_example;

TEST(SvaTruncate, LeadingBlocks) {
  const SvaForm s = compute_sva(two_state_example());
  const Wfa hat = sva_truncate(s, 1);
  EXPECT_EQ(hat.states(), 1);
  EXPECT_EQ(hat.initial()(0), s.wfa.initial()(0));
  EXPECT_EQ(hat.transition(1)(0, 0), s.wfa.transition(1)(0, 0));
  EXPECT_TRUE(std::isfinite(evaluate(hat, Word{})));
  const ApproxReport r = truncation_bound(s, 1);
  EXPECT_LE(r.measured_l2sq, *r.cf * std::sqrt(s.singular_values(1)));
}

TEST(SvaTruncate, RangeChecked) {
  const SvaForm s = compute_sva(two_state_example());
  EXPECT_THROW(sva_truncate(s, 2), Error);
  EXPECT_THROW(sva_truncate(s, 0), Error);
}

TEST(SvaTruncate, ZeroWeightTailStatesDropExactly) {
  // Block-diagonal form whose second block is never read out.
  const SvaForm base = compute_sva(two_state_example());
  const Eigen::Index n = 3;
  Vector a0 = Vector::Zero(n), ai = Vector::Zero(n);
  a0.head(2) = base.wfa.initial();
  ai.head(2) = base.wfa.final();
  std::vector<Matrix> mats;
  for (const Matrix& a : base.wfa.transitions()) {
    Matrix m = Matrix::Zero(n, n);
    m.topLeftCorner(2, 2) = a;
    m(2, 2) = 0.1;
    mats.push_back(m);
  }
  Vector sv(3);
  sv << base.singular_values(0), base.singular_values(1), 1e-3;
  const SvaForm s{Wfa(base.wfa.alphabet(), a0, ai, mats), sv};
  const Wfa hat = sva_truncate(s, 2);
  for (const Word& x : testing::words_up_to(2, 5))
    EXPECT_EQ(evaluate(hat, x), evaluate(s.wfa, x));
}

TEST(InnerProduct, Examples) {
  const Wfa w = two_state_example();
  EXPECT_NEAR(inner_product(w, w), 1.0 / 7, 1e-15);
  EXPECT_NEAR(inner_product(scalar_wfa({0.5}), scalar_wfa({0.5})), 4.0 / 3, 1e-15);
  EXPECT_EQ(inner_product(w, Wfa::zero(w.alphabet())), 0.0);
}

TEST(InnerProduct, RefusedWithoutSpectralCondition) {
  try {
    inner_product(scalar_wfa({1.0}), scalar_wfa({1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSpectralCondition);
  }
}

TEST(L2Distance, Examples) {
  const Wfa w = two_state_example();
  EXPECT_NEAR(l2_distance_sq(w, w), 0.0, 1e-10);
  EXPECT_NEAR(l2_distance_sq(w, Wfa::zero(w.alphabet())), 1.0 / 7, 1e-15);
}

TEST(L2Distance, MatchesErrorTermPartialSums) {
  const SvaForm s = compute_sva(two_state_example());
  const Wfa hat = sva_truncate(s, 1);
  const double exact = l2_distance_sq(s.wfa, hat);
  const auto terms = truncation_error_terms(s, 1, 30);
  double sum = 0.0;
  for (double d : terms) sum += d;
  EXPECT_NEAR(sum, exact, 1e-14);
}

TEST(L2Distance, RoutesAgree) {
  testing::CorpusOptions opts;
  opts.count = 20;
  opts.seed = 61;
  const auto corpus = testing::make_corpus(opts);
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    const Wfa& a = corpus[i];
    const SvaForm s = compute_sva(a);
    const Wfa b = sva_truncate(s, s.wfa.states() - 1);
    const L2Routes r = l2_distance_sq_routes(a, b);
    const double scale = inner_product(a, a) + inner_product(b, b);
    EXPECT_NEAR(r.via_difference, r.via_expansion, 1e-8 * scale);
  }
}

TEST(SchattenNorm, Examples) {
  Vector s(2);
  s << 3, 4;
  EXPECT_EQ(schatten_hankel_norm(s, 2), 5.0);
  EXPECT_EQ(schatten_hankel_norm(s, std::numeric_limits<double>::infinity()), 4.0);
  EXPECT_EQ(schatten_hankel_norm(s, 1), 7.0);
  EXPECT_NEAR(schatten_hankel_norm(s, 3), std::cbrt(91.0), 1e-14);
  EXPECT_THROW(schatten_hankel_norm(s, 0.5), Error);
  const Vector sv = hankel_singular_values(two_state_example());
  EXPECT_NEAR(schatten_hankel_norm(sv, 1), 0.506, 1e-3);
}

TEST(ErrorTerms, MatchExhaustiveDeltas) {
  testing::CorpusOptions opts;
  opts.count = 10;
  opts.seed = 62;
  for (const Wfa& w : testing::make_corpus(opts)) {
    const SvaForm s = compute_sva(w);
    for (Eigen::Index n_hat = 1; n_hat < s.wfa.states(); ++n_hat) {
      const Wfa hat = sva_truncate(s, n_hat);
      const auto terms = truncation_error_terms(s, n_hat, 4);
      for (int t = 0; t <= 4; ++t) {
        double delta = 0.0;
        for (const Word& x : testing::words_of_length(w.symbols(), t)) {
          const double d = testing::chain_product(s.wfa, x) - testing::chain_product(hat, x);
          delta += d * d;
        }
        EXPECT_NEAR(terms[static_cast<std::size_t>(t)], delta, 1e-9);
      }
    }
  }
}

TEST(TruncationBound, TwoStateExample) {
  const SvaForm s = compute_sva(two_state_example());
  const ApproxReport r = truncation_bound(s, 1);
  EXPECT_NEAR(r.tail_sum, s.singular_values(1), 1e-16);
  EXPECT_NEAR(r.tail_sum, 0.0864, 5e-5);
  ASSERT_TRUE(r.bound_available);
  EXPECT_TRUE(r.measured_exact());
  EXPECT_LE(r.measured_l2sq, *r.bound);
  EXPECT_GT(*r.cf, 0.0);
  EXPECT_NEAR(r.measured_l2sq, l2_distance_sq(two_state_example(), sva_truncate(s, 1)), 1e-14);

  // constants recomputed from their definitions
  const Wfa& a = s.wfa;
  double op_sq = 0.0;
  for (const Matrix& m : a.transitions()) op_sq += std::pow(linalg::operator_norm(m), 2);
  const double a0 = a.initial().norm(), ai = a.final().norm();
  EXPECT_NEAR(r.c1p, 2 * a0 * a0 * ai, 1e-15);
  EXPECT_NEAR(r.c2p, 2 * a0 * a0 * ai * ai * std::sqrt(op_sq), 1e-15);
  EXPECT_NEAR(*r.c1, r.c1p / (1 - r.rho_f), 1e-14);
  EXPECT_NEAR(*r.c2, r.c2p / std::pow(1 - r.rho_f, 2), 1e-14);
  EXPECT_NEAR(*r.cf, *r.c1 + *r.c2 / std::sqrt(s.singular_values(1)), 1e-13);
  EXPECT_NEAR(*r.bound, *r.cf * std::sqrt(r.tail_sum), 1e-13);
}

TEST(TruncationBound, NearDegenerateState) {
  // Geometric state plus a second state that only adds eps on the empty word.
  const double eps = 1e-6;
  Vector a0(2), ai(2);
  a0 << 1.0, std::sqrt(eps);
  ai = a0;
  Matrix a(2, 2);
  a << 0.5, 0, 0, 0.0;
  const SvaForm s = compute_sva(Wfa(Alphabet({"a"}), a0, ai, {a}));
  ASSERT_EQ(s.wfa.states(), 2);
  const double s2 = s.singular_values(1);
  EXPECT_GT(s2, 0.1 * eps);
  EXPECT_LT(s2, 10 * eps);
  const ApproxReport r = truncation_bound(s, 1);
  ASSERT_TRUE(r.bound_available);
  EXPECT_EQ(r.tail_sum, s2);
  EXPECT_NEAR(*r.bound, *r.cf * std::sqrt(s2), 1e-12 * *r.cf);
  EXPECT_LE(r.measured_l2sq, 1e-10);
  EXPECT_LE(r.measured_l2sq, *r.bound);
}

TEST(TruncationBound, UnavailableWhenNotContractive) {
  // Diagonal "SVA" with rho_f = 1.21; the bound must be refused.
  Vector a0(2), ai(2);
  a0 << 1, 0.5;
  ai << 1, 0.5;
  Matrix a(2, 2);
  a << 1.1, 0, 0, 0.5;
  Vector sv(2);
  sv << 2, 1;
  const SvaForm s{Wfa(Alphabet({"a"}), a0, ai, {a}), sv};
  const ApproxReport r = truncation_bound(s, 1);
  EXPECT_FALSE(r.bound_available);
  EXPECT_FALSE(r.bound.has_value());
  EXPECT_FALSE(r.cf.has_value());
  EXPECT_NEAR(r.rho_f, 1.21, 1e-14);
  EXPECT_GT(r.c1p, 0.0);
  // f - f^ keeps only the 0.5-state, which is summable once minimized.
  EXPECT_EQ(r.measured_route, MeasureRoute::kExactMinimized);
  EXPECT_NEAR(r.measured_l2sq, 0.0625 / (1 - 0.25), 1e-14);
}

TEST(TruncationBound, PartialSumsWhenNothingConverges) {
  // Difference automaton is not summable at all: measured goes through
  // partial sums, with no certificate because the radius exceeds 1.
  Vector a0(2), ai(2);
  a0 << 1, 0.5;
  ai << 1, 0.5;
  Matrix a(2, 2);
  a << 0.5, 0, 0, 1.1;
  Vector sv(2);
  sv << 2, 1;
  const SvaForm s{Wfa(Alphabet({"a"}), a0, ai, {a}), sv};
  ApproxOptions opts;
  opts.partial_depth = 10;
  const ApproxReport r = truncation_bound(s, 1, opts);
  EXPECT_FALSE(r.bound_available);
  EXPECT_EQ(r.measured_route, MeasureRoute::kPartialSums);
  EXPECT_EQ(r.partial_depth, 10);
  EXPECT_FALSE(r.tail_certificate.has_value());
  double expect = 0.0;
  for (int t = 0; t <= 10; ++t) expect += std::pow(0.25 * std::pow(1.1, t), 2);
  EXPECT_NEAR(r.measured_l2sq, expect, 1e-12 * expect);
}

TEST(TruncationBound, HoldsOnCorpus) {
  testing::CorpusOptions opts;
  opts.count = 30;
  opts.seed = 63;
  for (const Wfa& w : testing::make_corpus(opts)) {
    const SvaForm s = compute_sva(w);
    for (Eigen::Index n_hat = 1; n_hat < s.wfa.states(); ++n_hat) {
      const ApproxReport r = truncation_bound(s, n_hat);
      EXPECT_GE(r.tail_sum, 0.0);
      if (r.bound_available && r.measured_exact()) EXPECT_LE(r.measured_l2sq, *r.bound);
    }
  }
}

TEST(TruncationBound, InvariantUnderConjugation) {
  testing::CorpusOptions opts;
  opts.count = 10;
  opts.seed = 64;
  testing::Rng rng(65);
  for (const Wfa& w : testing::make_corpus(opts)) {
    const Matrix q = testing::random_well_conditioned(rng, w.states());
    const SvaForm a = compute_sva(w);
    const SvaForm b = compute_sva(conjugate(w, q));
    const Eigen::Index n_hat = a.wfa.states() - 1;
    const ApproxReport ra = truncation_bound(a, n_hat);
    const ApproxReport rb = truncation_bound(b, n_hat);
    EXPECT_NEAR(ra.rho_f, rb.rho_f, 1e-9 * ra.rho_f);
    EXPECT_NEAR(ra.c1p, rb.c1p, 1e-9 * ra.c1p);
    EXPECT_NEAR(ra.c2p, rb.c2p, 1e-9 * ra.c2p);
    EXPECT_NEAR(ra.tail_sum, rb.tail_sum, 1e-9 * ra.tail_sum);
  }
}

TEST(Sandwich, TwoStateExample) {
  const SvaForm s = compute_sva(two_state_example());
  const SandwichReport r = sandwich_report(s, 1, 2.0);
  ASSERT_TRUE(r.upper.has_value());
  ASSERT_TRUE(r.difference_hankel_norm.has_value());
  EXPECT_LE(r.measured, *r.upper);
  EXPECT_LE(r.lower, *r.difference_hankel_norm);
  EXPECT_EQ(r.upper_holds, true);
  EXPECT_EQ(r.lower_holds, true);
  EXPECT_NEAR(r.lower, s.singular_values(1), 1e-16);
}

TEST(Sandwich, TinyLastValue) {
  const double eps = 1e-8;
  Vector a0(2), ai(2);
  a0 << 1.0, std::sqrt(eps);
  ai = a0;
  Matrix a(2, 2);
  a << 0.5, 0, 0, 0.0;
  const SvaForm s = compute_sva(Wfa(Alphabet({"a"}), a0, ai, {a}));
  const SandwichReport r = sandwich_report(s, 1, 1.0);
  EXPECT_NEAR(r.lower, s.singular_values(1), 1e-20);
  ASSERT_TRUE(r.upper.has_value());
  EXPECT_NEAR(*r.upper, std::sqrt(*r.approx.cf) * std::pow(s.singular_values(1), 0.25), 1e-12);
  EXPECT_LE(r.measured, *r.upper);
}

}  // namespace
}  // namespace wfa
