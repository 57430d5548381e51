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
/// \file sva.hpp
///
/// Singular value automata: the minimal realization whose forward/backward
/// factorization P S^T of the Hankel matrix is U D^{1/2} (D^{1/2} V^T) for the
/// SVD H_f = U D V^T. Both Grams of an SVA equal diag(s_1, ..., s_n).
///
#ifndef WFA_SVA_HPP
#define WFA_SVA_HPP

#include <utility>
#include <vector>

#include "wfa/gram.hpp"
#include "wfa/wfa.hpp"

namespace wfa {

struct SvaForm {
  Wfa wfa;
  Vector singular_values;  // s_1 >= ... >= s_n > 0
};

/// Change of basis recovering the SVD from a rank factorization:
/// qp * diag(d) * qs^T = I.
struct FactorSvd {
  Matrix qp;
  Matrix qs;
  Vector d;
};

struct SvaOptions {
  GramMethod gram = GramMethod::kAuto;
  NumericOptions numeric;
};

/// Throws kNotMinimal when either Gram (or the middle factor) is rank
/// deficient at the cutoff.
FactorSvd svd_from_rank_factorization(const GramPair& grams,
                                      const NumericOptions& opts = {});

/// Minimizes, computes Grams, and conjugates by Q = Qp D^{1/2},
/// Q^{-1} = D^{1/2} Qs^T. State signs are then normalized so that the first
/// significant entry of (alpha0(j), alphaInf(j), off-diagonal transitions of
/// state j in symbol/index order) is positive.
SvaForm compute_sva(const Wfa& wfa, const SvaOptions& opts = {});

/// Absolute residuals of the two SVA fixed-point identities:
///   sum_i s_i sum_sigma A_sigma(i,j)^2 = s_j - alpha0(j)^2
///   sum_j s_j sum_sigma A_sigma(i,j)^2 = s_i - alphaInf(i)^2
std::pair<Vector, Vector> sva_residuals(const SvaForm& s);

/// Hankel singular values of f, i.e. sqrt of the eigenvalues of G_p G_s for a
/// minimal realization. Directions below the cutoff are dropped rather than
/// rejected.
Vector hankel_singular_values(const Wfa& wfa, const SvaOptions& opts = {});

/// |A_sigma(i,j)| <= sqrt(min(s_i,s_j) / max(s_i,s_j)) for an SVA.
struct OffDiagonalBounds {
  Matrix bound;
  std::vector<Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>> satisfied;
  bool all_satisfied = true;
};

OffDiagonalBounds off_diagonal_bounds(const SvaForm& s, double slack = 1e-9);

}  // namespace wfa

#endif  // WFA_SVA_HPP
