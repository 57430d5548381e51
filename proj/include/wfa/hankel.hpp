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
/// \file hankel.hpp
///
/// Brute-force ground truth over explicitly enumerated strings: finite
/// sections of the Hankel matrix, exhaustive length sums and partial Gram
/// sums. Nothing here goes through the Kronecker machinery except the tail
/// certificates.
///
#ifndef WFA_HANKEL_HPP
#define WFA_HANKEL_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "wfa/wfa.hpp"

namespace wfa::oracle {

inline constexpr std::size_t kDefaultEnumerationCap = 1000000;

/// Number of strings of length <= max_len; saturates instead of overflowing.
std::size_t count_strings(std::size_t k, int max_len);

/// All strings of length <= max_len in length-lexicographic order. Throws
/// kInput when the count exceeds `cap`.
std::vector<Word> enumerate_strings(const Alphabet& alphabet, int max_len,
                                    std::size_t cap = kDefaultEnumerationCap);

struct HankelBlock {
  std::vector<Word> prefixes;
  std::vector<Word> suffixes;
  Matrix values;  // values(p, s) = f(p s)
};

/// Every cell is evaluated independently from its own concatenation.
HankelBlock hankel_block(const Wfa& wfa, int max_prefix_len, int max_suffix_len,
                         std::size_t cap = kDefaultEnumerationCap);

/// True when cells with equal concatenations hold bit-identical values.
bool has_hankel_property(const HankelBlock& block);

Eigen::Index block_rank(const HankelBlock& block, double rel_cutoff = kDefaultRelCutoff);
Vector block_singular_values(const HankelBlock& block);

/// Visits every string of length <= max_len depth-first, passing the string
/// length and the forward row alpha0^T A_x.
void for_each_forward(const Wfa& wfa, int max_len,
                      const std::function<void(int, const Vector&)>& visit,
                      std::size_t cap = kDefaultEnumerationCap);

/// Same for backward columns A_x alphaInf.
void for_each_backward(const Wfa& wfa, int max_len,
                       const std::function<void(int, const Vector&)>& visit,
                       std::size_t cap = kDefaultEnumerationCap);

/// Exhaustive length sums |f|(Sigma^t) for t = 0..max_len.
std::vector<double> abs_length_sums(const Wfa& wfa, int max_len,
                                    std::size_t cap = kDefaultEnumerationCap);

struct L2Partial {
  double partial_sum = 0.0;
  std::vector<double> per_length;  // Delta_t, t = 0..max_len
  std::optional<double> tail_certificate;
};

/// sum_{|x| <= max_len} (f_a(x) - f_b(x))^2 by enumeration. The tail
/// certificate is |u| |v| q^{T+1} / (1 - q) with q the operator norm of
/// sum_sigma D_sigma (x) D_sigma for the difference automaton D, when q < 1.
L2Partial brute_l2_partial(const Wfa& a, const Wfa& b, int max_len,
                           std::size_t cap = kDefaultEnumerationCap);

/// Partial Gram sums over |x| <= max_len with per-length Frobenius masses.
struct PartialGram {
  Matrix gram;
  std::vector<double> level_mass;
};

PartialGram forward_gram_partial(const Wfa& wfa, int max_len,
                                 std::size_t cap = kDefaultEnumerationCap);
PartialGram backward_gram_partial(const Wfa& wfa, int max_len,
                                  std::size_t cap = kDefaultEnumerationCap);

}  // namespace wfa::oracle

#endif  // WFA_HANKEL_HPP
