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

#include "wfa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "wfa/error.hpp"

namespace wfa {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return "input error";
    case ErrorKind::kSpectralCondition:
      return "spectral condition violated";
    case ErrorKind::kNotPsd:
      return "Gram not PSD";
    case ErrorKind::kNotMinimal:
      return "input not minimal";
    case ErrorKind::kNonConvergence:
      return "non-convergence";
    case ErrorKind::kSingular:
      return "singular system";
  }
  return "unknown";
}

namespace linalg {

bool all_finite(const Matrix& m) { return m.allFinite(); }

SvdResult reduced_svd(const Matrix& m, double rel_cutoff) {
  if (!m.allFinite()) throw_input("reduced_svd: non-finite entries");
  if (!(rel_cutoff > 0.0 && rel_cutoff < 1.0))
    throw_input("reduced_svd: relative cutoff must lie in (0,1)");

  SvdResult out;
  if (m.size() == 0) {
    out.u.resize(m.rows(), 0);
    out.v.resize(m.cols(), 0);
    return out;
  }

  // Jacobi is more accurate for the small matrices that dominate here;
  // BDCSVD for the large finite Hankel sections.
  Matrix u, v;
  Vector d;
  if (std::min(m.rows(), m.cols()) <= 64) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    d = svd.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    d = svd.singularValues();
  }

  Eigen::Index r = 0;
  if (d.size() > 0 && d(0) > 0.0) {
    const double threshold = rel_cutoff * d(0);
    while (r < d.size() && d(r) > threshold) ++r;
  }
  out.u = u.leftCols(r);
  out.v = v.leftCols(r);
  out.d = d.head(r);
  return out;
}

PsdEig psd_eig(const Matrix& g, double rel_cutoff) {
  if (g.rows() != g.cols()) throw_input("psd_eig: matrix must be square");
  if (!g.allFinite()) throw_input("psd_eig: non-finite entries");
  PsdEig out;
  const Eigen::Index d = g.rows();
  if (d == 0) {
    out.vecs.resize(0, 0);
    return out;
  }
  const Matrix sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::kNotPsd, "psd_eig: eigensolver failed");

  // Eigen returns ascending order.
  const Vector& vals = es.eigenvalues();
  const double top = vals(d - 1);
  if (top <= 0.0) {
    if (top < 0.0)
      throw Error(ErrorKind::kNotPsd, "Gram not PSD: all eigenvalues negative");
    out.vecs.resize(d, 0);
    return out;
  }
  if (vals(0) < -rel_cutoff * top)
    throw Error(ErrorKind::kNotPsd,
                "Gram not PSD: eigenvalue " + std::to_string(vals(0)) +
                    " relative to " + std::to_string(top));

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = d - 1; i >= 0; --i)
    if (vals(i) > rel_cutoff * top) keep.push_back(i);

  out.vecs.resize(d, static_cast<Eigen::Index>(keep.size()));
  out.vals.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    out.vecs.col(col) = es.eigenvectors().col(keep[c]);
    out.vals(col) = vals(keep[c]);
  }
  return out;
}

Vector solve(const Matrix& m, const Vector& b) {
  if (m.rows() != m.cols() || m.rows() != b.size())
    throw_input("solve: dimension mismatch");
  if (m.rows() == 0) return Vector(0);
  if (!m.allFinite() || !b.allFinite()) throw_input("solve: non-finite input");

  Eigen::PartialPivLU<Matrix> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > 64 * std::numeric_limits<double>::epsilon()))
    throw Error(ErrorKind::kSingular,
                "solve: matrix singular to tolerance (rcond " +
                    std::to_string(rcond) + ")");
  Vector x = lu.solve(b);
  const double residual = (m * x - b).norm();
  const double scale = operator_norm(m) * x.norm() + b.norm();
  if (!x.allFinite() || residual > 1e-8 * scale)
    throw Error(ErrorKind::kSingular, "solve: residual bound violated");
  return x;
}

double spectral_radius(const Matrix& m) {
  if (m.rows() != m.cols()) throw_input("spectral_radius: matrix must be square");
  if (m.rows() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::kNonConvergence, "spectral_radius: eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

bool same_family(std::span<const Matrix> a, std::span<const Matrix> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a[s].rows() != b[s].rows() || a[s].cols() != b[s].cols() ||
        a[s] != b[s])
      return false;
  return true;
}

Matrix apply_congruence_sum(std::span<const Matrix> a, const Matrix& x) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& m : a) out.noalias() += m * x * m.transpose();
  return out;
}

}  // namespace

double kron_square_spectral_radius_iterative(std::span<const Matrix> a,
                                             int max_iter, double tol) {
  if (a.empty()) return 0.0;
  const Eigen::Index n = a[0].rows();
  if (n == 0) return 0.0;

  // X -> sum_s A_s X A_s^T preserves the PSD cone, so its spectral radius is
  // an eigenvalue with a PSD eigenvector. Shifting by c > 0 makes it the
  // unique peripheral eigenvalue of L + cI.
  Matrix x = Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
  const Matrix lx0 = apply_congruence_sum(a, x);
  const double shift = std::max(lx0.norm(), 1e-300);

  double estimate = 0.0;
  double prev = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    Matrix y = apply_congruence_sum(a, x) + shift * x;
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    // x has unit Frobenius norm, so |y| -> rho + shift.
    estimate = ny - shift;
    x = y / ny;
    if (prev >= 0.0 && std::abs(estimate - prev) <= tol * (std::abs(estimate) + shift))
      break;
    prev = estimate;
  }
  // Rayleigh-style refinement on the converged PSD direction.
  const Matrix lx = apply_congruence_sum(a, x);
  const double refined = (x.array() * lx.array()).sum();
  return std::max(0.0, refined);
}

double kron_sum_spectral_radius(std::span<const Matrix> a,
                                std::span<const Matrix> b,
                                Eigen::Index dense_limit) {
  if (a.size() != b.size()) throw_input("kron_sum_spectral_radius: size mismatch");
  if (a.empty()) return 0.0;
  const Eigen::Index dim = a[0].rows() * b[0].rows();
  if (dim > dense_limit && same_family(a, b))
    return kron_square_spectral_radius_iterative(a);
  return spectral_radius(kron_sum(a, b));
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double frobenius_norm(const Matrix& m) { return m.norm(); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix kron_sum(std::span<const Matrix> a, std::span<const Matrix> b) {
  if (a.size() != b.size()) throw_input("kron_sum: size mismatch");
  if (a.empty()) return Matrix(0, 0);
  Matrix out = Matrix::Zero(a[0].rows() * b[0].rows(), a[0].cols() * b[0].cols());
  for (std::size_t s = 0; s < a.size(); ++s) out += kron(a[s], b[s]);
  return out;
}

Vector vec(const Matrix& m) {
  Vector out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw_input("unvec: size mismatch");
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = v(i * cols + j);
  return out;
}

}  // namespace linalg
}  // namespace wfa
