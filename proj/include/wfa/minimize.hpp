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

#ifndef WFA_MINIMIZE_HPP
#define WFA_MINIMIZE_HPP

#include <vector>

#include "wfa/wfa.hpp"

namespace wfa {

/// Orthonormal rows spanning the reachable forward space {alpha0^T A_x}
/// (or backward space {A_x alphaInf}). `words[i]` is the string whose
/// vector contributed row i.
struct BasisSpan {
  Matrix basis;  // r x n
  std::vector<Word> words;

  Eigen::Index dim() const { return basis.rows(); }
};

/// Breadth-first closure in length-lexicographic order; a candidate row is
/// kept when its component orthogonal to the current span exceeds
/// `rel_cutoff` times the scale of the step that produced it.
BasisSpan forward_basis(const Wfa& wfa, const NumericOptions& opts = {});
BasisSpan backward_basis(const Wfa& wfa, const NumericOptions& opts = {});

/// Forward projection followed by backward projection. Returns the input
/// unchanged when it is already minimal; the zero function gives n = 0.
Wfa minimize(const Wfa& wfa, const NumericOptions& opts = {});

Eigen::Index rank(const Wfa& wfa, const NumericOptions& opts = {});

}  // namespace wfa

#endif  // WFA_MINIMIZE_HPP
