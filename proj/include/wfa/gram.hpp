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

///
/// \file gram.hpp
///
/// Gram matrices G_p = P^T P and G_s = S^T S of the forward/backward rank
/// factorization H_f = P S^T induced by a minimal automaton. P stacks the
/// forward vectors alpha0^T A_x and S the backward vectors A_x alphaInf, so
///
///   G_p = sum_x A_x^T alpha0 alpha0^T A_x,   G_s = sum_x A_x alphaInf alphaInf^T A_x^T,
///
/// both finite when rho(sum_sigma A_sigma (x) A_sigma) < 1.
///
#ifndef WFA_GRAM_HPP
#define WFA_GRAM_HPP

#include <string>

#include "wfa/wfa.hpp"

namespace wfa {

enum class GramMethod { kAuto, kDirect, kFixedPoint, kEntrywise };

const char* to_string(GramMethod m);
GramMethod parse_gram_method(const std::string& name);

struct GramPair {
  Matrix gp;
  Matrix gs;
  GramMethod method = GramMethod::kDirect;
  int iterations = 0;  // fixed-point only
};

struct SpectralCheck {
  double rho_kron = 0.0;  // rho(sum_sigma A_sigma (x) A_sigma)
  double rho_sum = 0.0;   // rho(sum_sigma A_sigma)
  bool ok = false;        // rho_kron < 1
};

SpectralCheck spectral_check(const Wfa& wfa);

/// Solves (I - A(x)) vec(G_s) = alphaInf (x) alphaInf and the transposed
/// system for G_p. Throws kSpectralCondition when the check fails.
GramPair grams_direct(const Wfa& wfa);

/// Iterates G <- v v^T + sum_sigma A G A^T (and the dual) from G = v v^T until
/// the Frobenius gap between successive iterates is at most `tol`.
GramPair grams_fixed_point(const Wfa& wfa, double tol = 1e-12, int max_iter = 100000);

/// Entry by entry: G_p(i,j) is the sum of the series realized by
/// <alpha0 (x) alpha0, e_i (x) e_j, {A_sigma (x) A_sigma}> after minimization,
/// summed as a0^T (I - sum_sigma A~_sigma)^{-1} a_inf. Upper triangle only.
GramPair grams_entrywise(const Wfa& wfa, const NumericOptions& opts = {});

/// kAuto: direct for n^2 <= 2500, fixed point above; entrywise when the
/// spectral check fails.
GramPair compute_grams(const Wfa& wfa, GramMethod method = GramMethod::kAuto,
                       const NumericOptions& opts = {});

}  // namespace wfa

#endif  // WFA_GRAM_HPP
