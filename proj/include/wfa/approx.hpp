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
/// \file approx.hpp
///
/// Approximate minimization by SVA truncation and its error analysis.
///
/// For an SVA with Hankel singular values s_1 >= ... >= s_n, keeping the
/// leading n^ states gives f^ with
///
///   |f - f^|_2^2 <= C_f sqrt(s_{n^+1} + ... + s_n),
///
/// where, with rho_f = |sum_sigma A_sigma (x) A_sigma| (operator norm) < 1,
///
///   C'_1 = 2 |alpha0|^2 |alphaInf|
///   C'_2 = 2 |alpha0|^2 |alphaInf|^2 (sum_sigma |A_sigma|^2)^{1/2}
///   C_1  = C'_1 / (1 - rho_f),   C_2 = C'_2 / (1 - rho_f)^2
///   C_f  = C_1 + C_2 / sqrt(s_n).
///
#ifndef WFA_APPROX_HPP
#define WFA_APPROX_HPP

#include <optional>
#include <string>
#include <vector>

#include "wfa/sva.hpp"
#include "wfa/wfa.hpp"

namespace wfa {

/// Leading n^ x n^ blocks of the SVA weights. Requires 0 < n_hat < n.
Wfa sva_truncate(const SvaForm& s, Eigen::Index n_hat);

/// (alpha0 (x) beta0)^T (I - sum_sigma A_sigma (x) B_sigma)^{-1} (alphaInf (x) betaInf).
/// Throws kSpectralCondition when the Kronecker sum has spectral radius >= 1.
double inner_product(const Wfa& a, const Wfa& b);

/// |f_a - f_b|_2^2 through the difference automaton a (-) b.
double l2_distance_sq(const Wfa& a, const Wfa& b);

struct L2Routes {
  double via_difference = 0.0;  // <f_a - f_b, f_a - f_b>
  double via_expansion = 0.0;   // <f_a,f_a> - 2 <f_a,f_b> + <f_b,f_b>
};
L2Routes l2_distance_sq_routes(const Wfa& a, const Wfa& b);

/// l^p norm of `s`; p in [1, inf].
double schatten_hankel_norm(const Vector& s, double p);

/// Delta_t = sum_{|x|=t} (f(x) - f^(x))^2 for t = 0..max_t, from the
/// padded-truncation construction gamma0 (C^t gamma_inf - C~^t gamma~_inf).
std::vector<double> truncation_error_terms(const SvaForm& s, Eigen::Index n_hat, int max_t);

struct ApproxOptions {
  int partial_depth = 24;
  NumericOptions numeric;
};

enum class MeasureRoute { kExact, kExactMinimized, kPartialSums };
const char* to_string(MeasureRoute r);

struct ApproxReport {
  Eigen::Index n_orig = 0;
  Eigen::Index n_hat = 0;
  Vector singular_values;
  double tail_sum = 0.0;
  double rho_f = 0.0;
  double c1p = 0.0;
  double c2p = 0.0;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> cf;
  std::optional<double> bound;
  bool bound_available = false;
  double measured_l2sq = 0.0;
  MeasureRoute measured_route = MeasureRoute::kExact;
  std::optional<int> partial_depth;
  std::optional<double> tail_certificate;  // partial sums only; absent = no certificate
  std::optional<double> ratio;             // measured / bound

  bool measured_exact() const { return measured_route != MeasureRoute::kPartialSums; }
};

/// Requires 0 < n_hat < n. Unavailability is reported through flags.
ApproxReport truncation_bound(const SvaForm& s, Eigen::Index n_hat,
                              const ApproxOptions& opts = {});

struct SandwichReport {
  double p = 1.0;
  double lower = 0.0;                 // |(s_{n^+1}, ..., s_n)|_p
  std::optional<double> upper;        // C_f^{1/2} |tail|_1^{1/4}
  double measured = 0.0;              // |f - f^|_2
  std::optional<double> difference_hankel_norm;  // |f - f^|_{H,p}
  std::optional<bool> lower_holds;
  std::optional<bool> upper_holds;
  ApproxReport approx;
};

SandwichReport sandwich_report(const SvaForm& s, Eigen::Index n_hat, double p,
                               const ApproxOptions& opts = {});

}  // namespace wfa

#endif  // WFA_APPROX_HPP
