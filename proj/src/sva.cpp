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

#include "wfa/sva.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "wfa/error.hpp"
#include "wfa/minimize.hpp"

namespace wfa {
namespace {

bool significant(double v, double scale) { return std::abs(v) > 1e-8 * scale; }

// Returns +1 or -1 for state j according to the sign convention.
double sign_for_state(const Wfa& w, Eigen::Index j, double s_j) {
  const double scale = std::sqrt(s_j);
  if (significant(w.initial()(j), scale)) return w.initial()(j) > 0 ? 1.0 : -1.0;
  if (significant(w.final()(j), scale)) return w.final()(j) > 0 ? 1.0 : -1.0;
  for (const Matrix& a : w.transitions()) {
    for (Eigen::Index i = 0; i < w.states(); ++i) {
      if (i == j) continue;
      if (significant(a(j, i), 1.0)) return a(j, i) > 0 ? 1.0 : -1.0;
    }
    for (Eigen::Index i = 0; i < w.states(); ++i) {
      if (i == j) continue;
      if (significant(a(i, j), 1.0)) return a(i, j) > 0 ? 1.0 : -1.0;
    }
  }
  return 1.0;
}

Wfa normalize_signs(const Wfa& w, const Vector& s) {
  const Eigen::Index n = w.states();
  Vector signs(n);
  for (Eigen::Index j = 0; j < n; ++j) signs(j) = sign_for_state(w, j, s(j));
  if ((signs.array() > 0).all()) return w;
  const auto d = signs.asDiagonal();
  std::vector<Matrix> trans;
  for (const Matrix& a : w.transitions()) trans.push_back(d * a * d);
  return Wfa(w.alphabet(), d * w.initial(), d * w.final(), std::move(trans));
}

Matrix middle_factor(const linalg::PsdEig& ep, const linalg::PsdEig& es) {
  return ep.vals.cwiseSqrt().asDiagonal() * ep.vecs.transpose() * es.vecs *
         es.vals.cwiseSqrt().asDiagonal();
}

}  // namespace

FactorSvd svd_from_rank_factorization(const GramPair& grams, const NumericOptions& opts) {
  const Eigen::Index n = grams.gp.rows();
  if (grams.gs.rows() != n || grams.gp.cols() != n || grams.gs.cols() != n)
    throw_input("svd_from_rank_factorization: Gram shapes differ");
  FactorSvd out;
  if (n == 0) return out;

  const linalg::PsdEig ep = linalg::psd_eig(grams.gp, opts.rel_cutoff);
  const linalg::PsdEig es = linalg::psd_eig(grams.gs, opts.rel_cutoff);
  if (ep.rank() < n || es.rank() < n)
    throw Error(ErrorKind::kNotMinimal,
                "input not minimal: Gram rank " + std::to_string(std::min(ep.rank(), es.rank())) +
                    " < " + std::to_string(n));

  const Matrix mt = middle_factor(ep, es);
  Eigen::JacobiSVD<Matrix> svd(mt, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& d = svd.singularValues();
  if (!(d(0) > 0.0) || d(n - 1) <= opts.rel_cutoff * d(0))
    throw Error(ErrorKind::kNotMinimal, "input not minimal: rank-deficient middle factor");

  out.d = d;
  out.qp = ep.vecs * ep.vals.cwiseSqrt().cwiseInverse().asDiagonal() * svd.matrixU();
  out.qs = es.vecs * es.vals.cwiseSqrt().cwiseInverse().asDiagonal() * svd.matrixV();
  return out;
}

SvaForm compute_sva(const Wfa& wfa, const SvaOptions& opts) {
  const Wfa minimal = minimize(wfa, opts.numeric);
  if (minimal.states() == 0) return SvaForm{minimal, Vector(0)};

  const GramPair grams = compute_grams(minimal, opts.gram, opts.numeric);
  const FactorSvd f = svd_from_rank_factorization(grams, opts.numeric);
  const Vector half = f.d.cwiseSqrt();
  const Matrix q = f.qp * half.asDiagonal();
  const Matrix q_inv = half.asDiagonal() * f.qs.transpose();
  const Wfa canonical = conjugate(minimal, q, q_inv);
  return SvaForm{normalize_signs(canonical, f.d), f.d};
}

std::pair<Vector, Vector> sva_residuals(const SvaForm& s) {
  const Wfa& w = s.wfa;
  const Eigen::Index n = w.states();
  if (s.singular_values.size() != n)
    throw_input("sva_residuals: singular value count differs from state count");
  Matrix sq = Matrix::Zero(n, n);
  for (const Matrix& a : w.transitions()) sq += a.cwiseAbs2();
  const Vector& sv = s.singular_values;
  const Vector col = sq.transpose() * sv;  // sum_i s_i sq(i,j)
  const Vector row = sq * sv;              // sum_j s_j sq(i,j)
  Vector r1 = (col - (sv - w.initial().cwiseAbs2())).cwiseAbs();
  Vector r2 = (row - (sv - w.final().cwiseAbs2())).cwiseAbs();
  return {std::move(r1), std::move(r2)};
}

Vector hankel_singular_values(const Wfa& wfa, const SvaOptions& opts) {
  const Wfa minimal = minimize(wfa, opts.numeric);
  if (minimal.states() == 0) return Vector(0);
  const GramPair grams = compute_grams(minimal, opts.gram, opts.numeric);
  const linalg::PsdEig ep = linalg::psd_eig(grams.gp, opts.numeric.rel_cutoff);
  const linalg::PsdEig es = linalg::psd_eig(grams.gs, opts.numeric.rel_cutoff);
  if (ep.rank() == 0 || es.rank() == 0) return Vector(0);
  return linalg::reduced_svd(middle_factor(ep, es), opts.numeric.rel_cutoff).d;
}

OffDiagonalBounds off_diagonal_bounds(const SvaForm& s, double slack) {
  const Eigen::Index n = s.wfa.states();
  const Vector& sv = s.singular_values;
  OffDiagonalBounds out;
  out.bound.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.bound(i, j) = std::sqrt(std::min(sv(i), sv(j)) / std::max(sv(i), sv(j)));
  for (const Matrix& a : s.wfa.transitions()) {
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> ok(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        ok(i, j) = std::abs(a(i, j)) <= out.bound(i, j) * (1.0 + slack) + slack;
        out.all_satisfied = out.all_satisfied && ok(i, j);
      }
    out.satisfied.push_back(std::move(ok));
  }
  return out;
}

}  // namespace wfa
