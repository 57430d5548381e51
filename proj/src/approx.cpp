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

#include "wfa/approx.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wfa/error.hpp"
#include "wfa/minimize.hpp"

namespace wfa {

const char* to_string(MeasureRoute r) {
  switch (r) {
    case MeasureRoute::kExact:
      return "exact";
    case MeasureRoute::kExactMinimized:
      return "exact_minimized";
    case MeasureRoute::kPartialSums:
      return "partial_sums";
  }
  return "unknown";
}

namespace {

void check_n_hat(const SvaForm& s, Eigen::Index n_hat) {
  const Eigen::Index n = s.wfa.states();
  if (s.singular_values.size() != n)
    throw_input("SVA singular value count differs from state count");
  if (!(n_hat > 0 && n_hat < n))
    throw_input("target state count must satisfy 0 < nHat < n (nHat = " +
                std::to_string(n_hat) + ", n = " + std::to_string(n) + ")");
}

// Padded truncation: same function as the truncation, n states, with
// alphaInf tail zeroed and the off-diagonal blocks removed.
Wfa padded_truncation(const Wfa& w, Eigen::Index n_hat) {
  const Eigen::Index n = w.states();
  const Eigen::Index tail = n - n_hat;
  Vector fin = w.final();
  fin.tail(tail).setZero();
  std::vector<Matrix> trans;
  for (const Matrix& a : w.transitions()) {
    Matrix m = a;
    m.topRightCorner(n_hat, tail).setZero();
    m.bottomLeftCorner(tail, n_hat).setZero();
    trans.push_back(std::move(m));
  }
  return Wfa(w.alphabet(), w.initial(), std::move(fin), std::move(trans));
}

struct ErrorVectors {
  Vector gamma0, gamma_inf, gamma_inf_tilde;
  Matrix c, c_tilde;
};

ErrorVectors error_vectors(const SvaForm& s, Eigen::Index n_hat) {
  const Wfa& a = s.wfa;
  const Wfa tilde = padded_truncation(a, n_hat);
  const Wfa b = direct_sum(a, tilde, /*negate_b=*/true);
  ErrorVectors ev;
  ev.gamma0 = linalg::kron(a.initial(), b.initial());
  ev.gamma_inf = linalg::kron(a.final(), b.final());
  ev.gamma_inf_tilde = linalg::kron(tilde.final(), b.final());
  ev.c = linalg::kron_sum(a.transitions(), b.transitions());
  ev.c_tilde = linalg::kron_sum(tilde.transitions(), b.transitions());
  return ev;
}

// sum_{t > T} of the per-term bound
//   |gamma0| |C~|^t |g - g~| + t |gamma0| |g| m^{t-1} |C - C~|,  m = max(|C|, |C~|).
std::optional<double> error_tail_certificate(const ErrorVectors& ev, int depth) {
  const double nc = linalg::operator_norm(ev.c);
  const double nct = linalg::operator_norm(ev.c_tilde);
  const double m = std::max(nc, nct);
  if (!(m < 1.0)) return std::nullopt;
  const double g0 = ev.gamma0.norm();
  const double dg = (ev.gamma_inf - ev.gamma_inf_tilde).norm();
  const double g = ev.gamma_inf.norm();
  const double dc = linalg::operator_norm(ev.c - ev.c_tilde);
  const double t = depth;
  const double first = g0 * dg * std::pow(nct, t + 1) / (1.0 - nct);
  // sum_{t >= T+1} t m^{t-1} = m^T ((T+1) - T m) / (1 - m)^2
  const double second =
      g0 * g * dc * std::pow(m, t) * ((t + 1.0) - t * m) / ((1.0 - m) * (1.0 - m));
  return first + second;
}

}  // namespace

Wfa sva_truncate(const SvaForm& s, Eigen::Index n_hat) {
  check_n_hat(s, n_hat);
  const Wfa& w = s.wfa;
  std::vector<Matrix> trans;
  for (const Matrix& a : w.transitions()) trans.push_back(a.topLeftCorner(n_hat, n_hat));
  return Wfa(w.alphabet(), w.initial().head(n_hat), w.final().head(n_hat), std::move(trans));
}

double inner_product(const Wfa& a, const Wfa& b) {
  if (!(a.alphabet() == b.alphabet())) throw_input("inner_product: alphabet mismatch");
  if (a.states() == 0 || b.states() == 0) return 0.0;
  const double rho = linalg::kron_sum_spectral_radius(a.transitions(), b.transitions());
  if (!(rho < 1.0)) {
    std::ostringstream msg;
    msg << "series not summable by this method: rho(sum A (x) B) = " << rho;
    throw Error(ErrorKind::kSpectralCondition, msg.str());
  }
  const Matrix c = linalg::kron_sum(a.transitions(), b.transitions());
  const Eigen::Index d = c.rows();
  const Vector x =
      linalg::solve(Matrix::Identity(d, d) - c, linalg::kron(a.final(), b.final()));
  return linalg::kron(a.initial(), b.initial()).dot(x);
}

double l2_distance_sq(const Wfa& a, const Wfa& b) {
  const Wfa diff = direct_sum(a, b, /*negate_b=*/true);
  return inner_product(diff, diff);
}

L2Routes l2_distance_sq_routes(const Wfa& a, const Wfa& b) {
  L2Routes out;
  out.via_difference = l2_distance_sq(a, b);
  out.via_expansion = inner_product(a, a) - 2.0 * inner_product(a, b) + inner_product(b, b);
  return out;
}

double schatten_hankel_norm(const Vector& s, double p) {
  if (!(p >= 1.0)) throw_input("Schatten-Hankel norm requires p >= 1");
  if (s.size() == 0) return 0.0;
  if (std::isinf(p)) return s.cwiseAbs().maxCoeff();
  if (p == 1.0) return s.cwiseAbs().sum();
  if (p == 2.0) return s.norm();
  return std::pow(s.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

std::vector<double> truncation_error_terms(const SvaForm& s, Eigen::Index n_hat, int max_t) {
  check_n_hat(s, n_hat);
  if (max_t < 0) throw_input("truncation_error_terms: depth must be nonnegative");
  const ErrorVectors ev = error_vectors(s, n_hat);
  std::vector<double> out;
  Vector x = ev.gamma_inf;
  Vector y = ev.gamma_inf_tilde;
  for (int t = 0; t <= max_t; ++t) {
    out.push_back(ev.gamma0.dot(x - y));
    x = ev.c * x;
    y = ev.c_tilde * y;
  }
  return out;
}

ApproxReport truncation_bound(const SvaForm& s, Eigen::Index n_hat, const ApproxOptions& opts) {
  check_n_hat(s, n_hat);
  const Wfa& w = s.wfa;
  const Vector& sv = s.singular_values;
  const Eigen::Index n = w.states();

  ApproxReport r;
  r.n_orig = n;
  r.n_hat = n_hat;
  r.singular_values = sv;
  r.tail_sum = std::max(0.0, sv.tail(n - n_hat).sum());
  r.rho_f = linalg::operator_norm(linalg::kron_sum(w.transitions(), w.transitions()));

  const double a0 = w.initial().norm();
  const double ainf = w.final().norm();
  double op_sq = 0.0;
  for (const Matrix& a : w.transitions()) {
    const double op = linalg::operator_norm(a);
    op_sq += op * op;
  }
  r.c1p = 2.0 * a0 * a0 * ainf;
  r.c2p = 2.0 * a0 * a0 * ainf * ainf * std::sqrt(op_sq);
  r.bound_available = r.rho_f < 1.0;
  if (r.bound_available) {
    const double gap = 1.0 - r.rho_f;
    r.c1 = r.c1p / gap;
    r.c2 = r.c2p / (gap * gap);
    r.cf = *r.c1 + *r.c2 / std::sqrt(sv(n - 1));
    r.bound = *r.cf * std::sqrt(r.tail_sum);
  }

  const Wfa trunc = sva_truncate(s, n_hat);
  const Wfa diff = direct_sum(w, trunc, /*negate_b=*/true);
  bool measured = false;
  try {
    r.measured_l2sq = inner_product(diff, diff);
    r.measured_route = MeasureRoute::kExact;
    measured = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSpectralCondition) throw;
  }
  if (!measured) {
    try {
      const Wfa m = minimize(diff, opts.numeric);
      r.measured_l2sq = inner_product(m, m);
      r.measured_route = MeasureRoute::kExactMinimized;
      measured = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kSpectralCondition) throw;
    }
  }
  if (!measured) {
    const std::vector<double> terms = truncation_error_terms(s, n_hat, opts.partial_depth);
    double sum = 0.0;
    for (double d : terms) sum += d;
    r.measured_l2sq = sum;
    r.measured_route = MeasureRoute::kPartialSums;
    r.partial_depth = opts.partial_depth;
    r.tail_certificate = error_tail_certificate(error_vectors(s, n_hat), opts.partial_depth);
  }
  if (r.bound && *r.bound > 0.0) r.ratio = r.measured_l2sq / *r.bound;
  return r;
}

SandwichReport sandwich_report(const SvaForm& s, Eigen::Index n_hat, double p,
                               const ApproxOptions& opts) {
  SandwichReport out;
  out.approx = truncation_bound(s, n_hat, opts);
  out.p = p;
  const Eigen::Index n = s.wfa.states();
  const Vector tail = s.singular_values.tail(n - n_hat);
  out.lower = schatten_hankel_norm(tail, p);
  out.measured = std::sqrt(std::max(0.0, out.approx.measured_l2sq));
  if (out.approx.cf) {
    out.upper = std::sqrt(*out.approx.cf) * std::pow(out.approx.tail_sum, 0.25);
    if (out.approx.measured_exact()) out.upper_holds = out.measured <= *out.upper;
  }

  const Wfa diff = direct_sum(s.wfa, sva_truncate(s, n_hat), /*negate_b=*/true);
  try {
    SvaOptions sopts;
    sopts.gram = GramMethod::kDirect;
    sopts.numeric = opts.numeric;
    const Vector diff_sv = hankel_singular_values(diff, sopts);
    out.difference_hankel_norm = schatten_hankel_norm(diff_sv, p);
    // Relative slack for the rounding in both sides.
    out.lower_holds = *out.difference_hankel_norm >= out.lower * (1.0 - 1e-9) - 1e-15;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSpectralCondition) throw;
  }
  return out;
}

}  // namespace wfa
