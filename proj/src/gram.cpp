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

#include "wfa/gram.hpp"

#include <sstream>

#include "wfa/error.hpp"
#include "wfa/minimize.hpp"

namespace wfa {

const char* to_string(GramMethod m) {
  switch (m) {
    case GramMethod::kAuto:
      return "auto";
    case GramMethod::kDirect:
      return "direct";
    case GramMethod::kFixedPoint:
      return "fixedpoint";
    case GramMethod::kEntrywise:
      return "entrywise";
  }
  return "unknown";
}

GramMethod parse_gram_method(const std::string& name) {
  if (name == "auto") return GramMethod::kAuto;
  if (name == "direct") return GramMethod::kDirect;
  if (name == "fixedpoint" || name == "fixed_point") return GramMethod::kFixedPoint;
  if (name == "entrywise") return GramMethod::kEntrywise;
  throw_input("unknown Gram method '" + name + "'");
}

SpectralCheck spectral_check(const Wfa& wfa) {
  SpectralCheck out;
  if (wfa.states() == 0) {
    out.ok = true;
    return out;
  }
  out.rho_kron = linalg::kron_sum_spectral_radius(wfa.transitions(), wfa.transitions());
  out.rho_sum = linalg::spectral_radius(wfa.transition_sum());
  out.ok = out.rho_kron < 1.0;
  return out;
}

namespace {

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

void require_spectral(const Wfa& wfa, const char* who) {
  const SpectralCheck check = spectral_check(wfa);
  if (!check.ok) {
    std::ostringstream msg;
    msg << who << ": spectral condition violated (rho(A(x)) = " << check.rho_kron
        << " >= 1); use entrywise Grams";
    throw Error(ErrorKind::kSpectralCondition, msg.str());
  }
}

// Sum of the series realized by `w` through its minimal realization.
double series_sum_minimized(const Wfa& w, const NumericOptions& opts) {
  const Wfa m = minimize(w, opts);
  if (m.states() == 0) return 0.0;
  const Matrix sum = m.transition_sum();
  const double rho = linalg::spectral_radius(sum);
  if (!(rho < 1.0)) {
    std::ostringstream msg;
    msg << "series summation unavailable: minimized entry automaton has "
           "rho(sum A~) = "
        << rho << " (function likely not absolutely convergent)";
    throw Error(ErrorKind::kSpectralCondition, msg.str());
  }
  const Eigen::Index r = m.states();
  const Vector x = linalg::solve(Matrix::Identity(r, r) - sum, m.final());
  return m.initial().dot(x);
}

}  // namespace

GramPair grams_direct(const Wfa& wfa) {
  const Eigen::Index n = wfa.states();
  GramPair out;
  out.method = GramMethod::kDirect;
  if (n == 0) return out;
  require_spectral(wfa, "grams_direct");

  const Matrix kron = linalg::kron_sum(wfa.transitions(), wfa.transitions());
  const Matrix lhs = Matrix::Identity(n * n, n * n) - kron;
  const Vector vs = linalg::solve(lhs, linalg::kron(wfa.final(), wfa.final()));
  const Vector vp =
      linalg::solve(lhs.transpose(), linalg::kron(wfa.initial(), wfa.initial()));
  out.gs = symmetrize(linalg::unvec(vs, n, n));
  out.gp = symmetrize(linalg::unvec(vp, n, n));
  return out;
}

GramPair grams_fixed_point(const Wfa& wfa, double tol, int max_iter) {
  const Eigen::Index n = wfa.states();
  GramPair out;
  out.method = GramMethod::kFixedPoint;
  if (n == 0) return out;
  require_spectral(wfa, "grams_fixed_point");

  const Matrix seed_s = wfa.final() * wfa.final().transpose();
  const Matrix seed_p = wfa.initial() * wfa.initial().transpose();
  Matrix gs = seed_s;
  Matrix gp = seed_p;
  double gap = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Matrix next_s = seed_s;
    Matrix next_p = seed_p;
    for (const Matrix& a : wfa.transitions()) {
      next_s.noalias() += a * gs * a.transpose();
      next_p.noalias() += a.transpose() * gp * a;
    }
    gap = std::max((next_s - gs).norm(), (next_p - gp).norm());
    gs = std::move(next_s);
    gp = std::move(next_p);
    if (gap <= tol) {
      out.gs = symmetrize(gs);
      out.gp = symmetrize(gp);
      out.iterations = it;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "grams_fixed_point: no convergence after " << max_iter
      << " iterations (final gap " << gap << ")";
  throw Error(ErrorKind::kNonConvergence, msg.str());
}

GramPair grams_entrywise(const Wfa& wfa, const NumericOptions& opts) {
  const Eigen::Index n = wfa.states();
  GramPair out;
  out.method = GramMethod::kEntrywise;
  out.gp = Matrix::Zero(n, n);
  out.gs = Matrix::Zero(n, n);
  if (n == 0) return out;

  std::vector<Matrix> kron_trans;
  kron_trans.reserve(wfa.symbols());
  for (const Matrix& a : wfa.transitions()) kron_trans.push_back(linalg::kron(a, a));
  const Vector init2 = linalg::kron(wfa.initial(), wfa.initial());
  const Vector final2 = linalg::kron(wfa.final(), wfa.final());

  // Entries are independent tasks.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Vector eij = Vector::Zero(n * n);
      eij(i * n + j) = 1.0;
      const Wfa entry_p(wfa.alphabet(), init2, eij, kron_trans);
      const Wfa entry_s(wfa.alphabet(), eij, final2, kron_trans);
      out.gp(i, j) = out.gp(j, i) = series_sum_minimized(entry_p, opts);
      out.gs(i, j) = out.gs(j, i) = series_sum_minimized(entry_s, opts);
    }
  }
  return out;
}

GramPair compute_grams(const Wfa& wfa, GramMethod method, const NumericOptions& opts) {
  switch (method) {
    case GramMethod::kDirect:
      return grams_direct(wfa);
    case GramMethod::kFixedPoint:
      return grams_fixed_point(wfa);
    case GramMethod::kEntrywise:
      return grams_entrywise(wfa, opts);
    case GramMethod::kAuto:
      break;
  }
  if (!spectral_check(wfa).ok) return grams_entrywise(wfa, opts);
  const Eigen::Index n = wfa.states();
  return n * n <= 2500 ? grams_direct(wfa) : grams_fixed_point(wfa);
}

}  // namespace wfa
