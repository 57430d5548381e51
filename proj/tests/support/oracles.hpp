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

// Independent reference computations used by the tests. None of these call
// the library routine they are meant to check.

#ifndef WFA_TESTS_ORACLES_HPP
#define WFA_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "wfa/wfa.hpp"

namespace wfa::testing {

// alpha0 = e1, alphaInf = (1/3, 1/3), A_a swaps and scales, A_b = diag(-1/3, 1/3).
inline Wfa two_state_example() {
  const double t = 1.0 / 3.0;
  Matrix a(2, 2), b(2, 2);
  a << 0, t, t, 0;
  b << -t, 0, 0, t;
  Vector a0(2), ai(2);
  a0 << 1, 0;
  ai << t, t;
  return Wfa(Alphabet({"a", "b"}), a0, ai, {a, b});
}

// One state, alpha0 = alphaInf = 1, one weight per symbol.
inline Wfa scalar_wfa(std::vector<double> weights, double initial = 1.0, double final = 1.0) {
  std::vector<std::string> syms;
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    syms.push_back(std::string(1, static_cast<char>('a' + i)));
    mats.push_back(Matrix::Constant(1, 1, weights[i]));
  }
  return Wfa(Alphabet(syms), Vector::Constant(1, initial), Vector::Constant(1, final), mats);
}

// Appends `extra` states that are never reached and never read out.
inline Wfa pad_dead_states(const Wfa& w, Eigen::Index extra, double fill = 0.7) {
  const Eigen::Index n = w.states();
  const Eigen::Index m = n + extra;
  Vector a0 = Vector::Zero(m), ai = Vector::Zero(m);
  a0.head(n) = w.initial();
  ai.head(n) = w.final();
  std::vector<Matrix> mats;
  for (const Matrix& a : w.transitions()) {
    Matrix p = Matrix::Zero(m, m);
    p.topLeftCorner(n, n) = a;
    // dead states talk only among themselves
    p.bottomRightCorner(extra, extra).setConstant(fill / static_cast<double>(extra + 1));
    mats.push_back(p);
  }
  return Wfa(w.alphabet(), a0, ai, mats);
}

// alpha0^T (A_x1 A_x2 ... A_xt) alphaInf with the full n x n product formed first.
inline double chain_product(const Wfa& w, const Word& x) {
  const Eigen::Index n = w.states();
  if (n == 0) return 0.0;
  Matrix m = Matrix::Identity(n, n);
  for (std::size_t s : x) m = m * w.transition(s);
  return w.initial().dot(m * w.final());
}

// Same product with every entry replaced by its absolute value: the size of
// f(x) before cancellation, used to scale rounding tolerances.
inline double abs_chain_product(const Wfa& w, const Word& x) {
  const Eigen::Index n = w.states();
  if (n == 0) return 0.0;
  Matrix m = Matrix::Identity(n, n);
  for (std::size_t s : x) m = m * w.transition(s).cwiseAbs();
  return w.initial().cwiseAbs().dot(m * w.final().cwiseAbs());
}

// Every word of length exactly t, odometer order.
inline std::vector<Word> words_of_length(std::size_t k, int t) {
  std::vector<Word> out;
  Word w(static_cast<std::size_t>(t), 0);
  if (k == 0) {
    if (t == 0) out.push_back(w);
    return out;
  }
  while (true) {
    out.push_back(w);
    int i = t - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] + 1 == k) {
      w[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return out;
}

inline std::vector<Word> words_up_to(std::size_t k, int max_len) {
  std::vector<Word> out;
  for (int t = 0; t <= max_len; ++t) {
    auto level = words_of_length(k, t);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

inline double exhaustive_length_sum(const Wfa& w, int t) {
  double s = 0.0;
  for (const Word& x : words_of_length(w.symbols(), t)) s += chain_product(w, x);
  return s;
}

// sum_{|x| <= max_len} (f_a(x) - f_b(x))^2 by direct evaluation.
inline double exhaustive_l2_sq(const Wfa& a, const Wfa& b, int max_len) {
  double s = 0.0;
  for (const Word& x : words_up_to(a.symbols(), max_len)) {
    const double d = chain_product(a, x) - chain_product(b, x);
    s += d * d;
  }
  return s;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Checks `pred(f_a(x), f_b(x))` for every |x| <= max_len.
inline bool agree_on_words(const Wfa& a, const Wfa& b, int max_len,
                           const std::function<bool(double, double)>& pred) {
  for (const Word& x : words_up_to(a.symbols(), max_len))
    if (!pred(chain_product(a, x), chain_product(b, x))) return false;
  return true;
}

inline bool agree_relative(const Wfa& a, const Wfa& b, int max_len, double tol) {
  return agree_on_words(a, b, max_len, [tol](double u, double v) {
    return std::abs(u - v) <= tol * (1.0 + std::abs(u));
  });
}

}  // namespace wfa::testing

#endif  // WFA_TESTS_ORACLES_HPP
