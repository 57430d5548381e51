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

#include "wfa/wfa.hpp"

#include <set>
#include <sstream>

#include <Eigen/SVD>
#include <Eigen/LU>

#include "wfa/error.hpp"

namespace wfa {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw_input("alphabet must contain at least one symbol");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw_input("alphabet symbols must be non-empty");
    for (char c : s)
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        throw_input("alphabet symbol '" + s + "' contains whitespace");
    if (!seen.insert(s).second) throw_input("duplicate alphabet symbol '" + s + "'");
  }
}

std::optional<std::size_t> Alphabet::index_of(std::string_view token) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == token) return i;
  return std::nullopt;
}

Word parse_word(const Alphabet& alphabet, std::string_view tokens) {
  Word out;
  std::istringstream in{std::string(tokens)};
  std::string tok;
  while (in >> tok) {
    auto idx = alphabet.index_of(tok);
    if (!idx) throw_input("unknown symbol '" + tok + "'");
    out.push_back(*idx);
  }
  return out;
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.symbol(word[i]);
  }
  return out;
}

Wfa::Wfa(Alphabet alphabet, Vector initial, Vector final,
         std::vector<Matrix> transitions)
    : alphabet_(std::move(alphabet)),
      initial_(std::move(initial)),
      final_(std::move(final)),
      transitions_(std::move(transitions)) {
  if (alphabet_.size() == 0) throw_input("automaton needs a non-empty alphabet");
  const Eigen::Index n = initial_.size();
  if (final_.size() != n) throw_input("final vector length differs from state count");
  if (transitions_.size() != alphabet_.size())
    throw_input("expected one transition matrix per alphabet symbol");
  for (std::size_t s = 0; s < transitions_.size(); ++s) {
    const Matrix& m = transitions_[s];
    if (m.rows() != n || m.cols() != n)
      throw_input("transition matrix for '" + alphabet_.symbol(s) + "' is not n x n");
    if (!m.allFinite()) throw_input("non-finite transition weight");
  }
  if (!initial_.allFinite() || !final_.allFinite()) throw_input("non-finite weight");
}

Wfa Wfa::zero(Alphabet alphabet) {
  std::vector<Matrix> trans(alphabet.size(), Matrix(0, 0));
  return Wfa(std::move(alphabet), Vector(0), Vector(0), std::move(trans));
}

Matrix Wfa::transition_sum() const {
  Matrix sum = Matrix::Zero(states(), states());
  for (const Matrix& m : transitions_) sum += m;
  return sum;
}

double evaluate(const Wfa& wfa, const Word& x) {
  Eigen::RowVectorXd row = wfa.initial().transpose();
  for (std::size_t sym : x) {
    if (sym >= wfa.symbols()) throw_input("symbol index outside the alphabet");
    row = row * wfa.transition(sym);
  }
  return wfa.states() == 0 ? 0.0 : row.dot(wfa.final());
}

double evaluate(const Wfa& wfa, std::string_view tokens) {
  return evaluate(wfa, parse_word(wfa.alphabet(), tokens));
}

double length_sum(const Wfa& wfa, int t) {
  if (t < 0) throw_input("length_sum: t must be nonnegative");
  if (wfa.states() == 0) return 0.0;
  const Matrix sum = wfa.transition_sum();
  Eigen::RowVectorXd row = wfa.initial().transpose();
  for (int i = 0; i < t; ++i) row = row * sum;
  return row.dot(wfa.final());
}

Wfa conjugate(const Wfa& wfa, const Matrix& q, const NumericOptions& opts) {
  const Eigen::Index n = wfa.states();
  if (q.rows() != n || q.cols() != n) throw_input("conjugate: Q must be n x n");
  if (n == 0) return wfa;
  Eigen::JacobiSVD<Matrix> svd(q);
  const Vector& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(n - 1) <= opts.rel_cutoff * sv(0))
    throw_input("conjugate: Q is singular at tolerance");
  return conjugate(wfa, q, Matrix(q.inverse()));
}

Wfa conjugate(const Wfa& wfa, const Matrix& q, const Matrix& q_inv) {
  const Eigen::Index n = wfa.states();
  if (q.cols() != q_inv.rows() || q.rows() != q_inv.cols() || q.rows() != n)
    throw_input("conjugate: incompatible Q / Q^{-1} shapes");
  std::vector<Matrix> trans;
  trans.reserve(wfa.symbols());
  for (const Matrix& m : wfa.transitions()) trans.push_back(q_inv * m * q);
  Vector initial = q.transpose() * wfa.initial();
  Vector final = q_inv * wfa.final();
  return Wfa(wfa.alphabet(), std::move(initial), std::move(final), std::move(trans));
}

Wfa direct_sum(const Wfa& a, const Wfa& b, bool negate_b) {
  if (!(a.alphabet() == b.alphabet())) throw_input("direct_sum: alphabet mismatch");
  const Eigen::Index na = a.states();
  const Eigen::Index nb = b.states();
  Vector initial(na + nb);
  initial << a.initial(), (negate_b ? -1.0 : 1.0) * b.initial();
  Vector final(na + nb);
  final << a.final(), b.final();
  std::vector<Matrix> trans;
  for (std::size_t s = 0; s < a.symbols(); ++s) {
    Matrix m = Matrix::Zero(na + nb, na + nb);
    m.topLeftCorner(na, na) = a.transition(s);
    m.bottomRightCorner(nb, nb) = b.transition(s);
    trans.push_back(std::move(m));
  }
  return Wfa(a.alphabet(), std::move(initial), std::move(final), std::move(trans));
}

Wfa hadamard_product(const Wfa& a, const Wfa& b) {
  if (!(a.alphabet() == b.alphabet())) throw_input("hadamard_product: alphabet mismatch");
  std::vector<Matrix> trans;
  for (std::size_t s = 0; s < a.symbols(); ++s)
    trans.push_back(linalg::kron(a.transition(s), b.transition(s)));
  return Wfa(a.alphabet(), linalg::kron(a.initial(), b.initial()),
             linalg::kron(a.final(), b.final()), std::move(trans));
}

}  // namespace wfa
