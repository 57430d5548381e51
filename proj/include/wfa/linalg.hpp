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
/// \file linalg.hpp
///
/// Dense kernels shared by every algorithm in the library. All rank
/// decisions go through a single relative cutoff (see NumericOptions).
///
#ifndef WFA_LINALG_HPP
#define WFA_LINALG_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

namespace wfa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Library-wide default for relative rank cutoffs.
inline constexpr double kDefaultRelCutoff = 1e-10;

struct NumericOptions {
  double rel_cutoff = kDefaultRelCutoff;
};

namespace linalg {

/// Reduced SVD restricted to singular triples above `rel_cutoff * s_1`.
struct SvdResult {
  Matrix u;  // d1 x r
  Vector d;  // r, strictly positive, nonincreasing
  Matrix v;  // d2 x r

  Eigen::Index rank() const { return d.size(); }
};

/// Eigenpairs of a symmetric PSD matrix above `rel_cutoff * lambda_1`.
struct PsdEig {
  Matrix vecs;  // d x r
  Vector vals;  // r, positive, nonincreasing

  Eigen::Index rank() const { return vals.size(); }
};

SvdResult reduced_svd(const Matrix& m, double rel_cutoff = kDefaultRelCutoff);

/// Symmetrizes `g` before decomposing. Throws kNotPsd when an eigenvalue is
/// below `-rel_cutoff * lambda_1`.
PsdEig psd_eig(const Matrix& g, double rel_cutoff = kDefaultRelCutoff);

/// Solves `m x = b`; throws kSingular when `m` is singular to tolerance or the
/// residual exceeds 1e-8 (|m| |x| + |b|).
Vector solve(const Matrix& m, const Vector& b);

/// Largest eigenvalue modulus, from the full dense spectrum.
double spectral_radius(const Matrix& m);

/// Spectral radius of sum_s kron(a[s], b[s]). For matrix sizes above
/// `dense_limit` and a == b, uses a matrix-free shifted power iteration on
/// X -> sum_s a[s] X a[s]^T, accurate to about 1e-6 relative. Mixed pairs are
/// always handled densely.
double kron_sum_spectral_radius(std::span<const Matrix> a,
                                std::span<const Matrix> b,
                                Eigen::Index dense_limit = 400);

/// Power-iteration path of kron_sum_spectral_radius, exposed for testing.
double kron_square_spectral_radius_iterative(std::span<const Matrix> a,
                                             int max_iter = 20000,
                                             double tol = 1e-10);

/// sigma_1(m); zero for empty matrices.
double operator_norm(const Matrix& m);
double frobenius_norm(const Matrix& m);

/// (a (x) b)((i-1) p + i', (j-1) q + j') = a(i,j) b(i',j') with b of size p x q.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// sum_s kron(a[s], b[s]).
Matrix kron_sum(std::span<const Matrix> a, std::span<const Matrix> b);

/// Row-major vectorization: vec(M)((i-1) d2 + j) = M(i,j).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

bool all_finite(const Matrix& m);

}  // namespace linalg
}  // namespace wfa

#endif  // WFA_LINALG_HPP
