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
/// \file wfa.hpp
///
/// Weighted finite automata over the reals in linear-algebraic form
/// <alpha0, alphaInf, {A_sigma}>, with the structural operations the rest of
/// the library builds on.
///
#ifndef WFA_WFA_HPP
#define WFA_WFA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfa/linalg.hpp"

namespace wfa {

/// Ordered set of distinct symbol tokens. The declared order fixes the
/// iteration order of every sum over symbols.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<std::size_t> index_of(std::string_view token) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// A string over an alphabet, as symbol indices. Empty means lambda.
using Word = std::vector<std::size_t>;

/// Splits whitespace-separated tokens into a Word. Throws kInput on tokens
/// outside the alphabet.
Word parse_word(const Alphabet& alphabet, std::string_view tokens);
std::string format_word(const Alphabet& alphabet, const Word& word);

class Wfa {
 public:
  /// Validates shapes and finiteness; throws kInput otherwise.
  Wfa(Alphabet alphabet, Vector initial, Vector final,
      std::vector<Matrix> transitions);

  /// The n = 0 automaton realizing the zero function.
  static Wfa zero(Alphabet alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  Eigen::Index states() const { return initial_.size(); }
  std::size_t symbols() const { return alphabet_.size(); }
  const Vector& initial() const { return initial_; }
  const Vector& final() const { return final_; }
  const Matrix& transition(std::size_t symbol) const { return transitions_.at(symbol); }
  const std::vector<Matrix>& transitions() const { return transitions_; }

  /// sum_sigma A_sigma.
  Matrix transition_sum() const;

 private:
  Alphabet alphabet_;
  Vector initial_;
  Vector final_;
  std::vector<Matrix> transitions_;
};

/// alpha0^T A_{x_1} ... A_{x_t} alphaInf, accumulated left to right.
double evaluate(const Wfa& wfa, const Word& x);
double evaluate(const Wfa& wfa, std::string_view tokens);

/// f(Sigma^t) = alpha0^T (sum_sigma A_sigma)^t alphaInf.
double length_sum(const Wfa& wfa, int t);

/// <alpha0^T Q, Q^{-1} alphaInf, {Q^{-1} A_sigma Q}>. Throws kInput when `q`
/// is singular at `opts.rel_cutoff`.
Wfa conjugate(const Wfa& wfa, const Matrix& q, const NumericOptions& opts = {});

/// Same, with the inverse supplied by the caller.
Wfa conjugate(const Wfa& wfa, const Matrix& q, const Matrix& q_inv);

/// Realizes f_a + f_b, or f_a - f_b when `negate_b`.
Wfa direct_sum(const Wfa& a, const Wfa& b, bool negate_b);

/// Realizes the pointwise product f_a * f_b with n_a * n_b states.
Wfa hadamard_product(const Wfa& a, const Wfa& b);

}  // namespace wfa

#endif  // WFA_WFA_HPP
