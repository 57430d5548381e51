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

#include "wfa/hankel.hpp"

#include <cmath>
#include <limits>
#include <map>

#include <Eigen/SVD>

#include "wfa/error.hpp"

namespace wfa::oracle {

std::size_t count_strings(std::size_t k, int max_len) {
  if (max_len < 0) return 0;
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  std::size_t level = 1;
  for (int t = 0; t <= max_len; ++t) {
    if (total > kMax - level) return kMax;
    total += level;
    if (t < max_len) {
      if (k != 0 && level > kMax / k) return kMax;
      level *= k;
    }
  }
  return total;
}

namespace {

void check_cap(std::size_t k, int max_len, std::size_t cap) {
  if (max_len < 0) throw_input("maximum length must be nonnegative");
  const std::size_t count = count_strings(k, max_len);
  if (count > cap)
    throw_input("enumeration of " + std::to_string(count) + " strings exceeds cap " +
                std::to_string(cap));
}

Word concat(const Word& p, const Word& s) {
  Word out = p;
  out.insert(out.end(), s.begin(), s.end());
  return out;
}

template <class Step>
void dfs(const Wfa& wfa, int max_len, const Vector& start, Step step,
         const std::function<void(int, const Vector&)>& visit) {
  // Explicit stack of per-depth vectors keeps allocation bounded.
  std::vector<Vector> stack(static_cast<std::size_t>(max_len) + 1);
  stack[0] = start;
  std::vector<std::size_t> next(static_cast<std::size_t>(max_len) + 1, 0);
  visit(0, stack[0]);
  int depth = 0;
  while (depth >= 0) {
    const auto d = static_cast<std::size_t>(depth);
    if (depth == max_len || next[d] == wfa.symbols()) {
      next[d] = 0;
      --depth;
      continue;
    }
    const std::size_t sym = next[d]++;
    stack[d + 1] = step(wfa.transition(sym), stack[d]);
    visit(depth + 1, stack[d + 1]);
    ++depth;
  }
}

}  // namespace

std::vector<Word> enumerate_strings(const Alphabet& alphabet, int max_len, std::size_t cap) {
  check_cap(alphabet.size(), max_len, cap);
  std::vector<Word> out;
  out.emplace_back();
  std::size_t level_begin = 0;
  for (int t = 1; t <= max_len; ++t) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t s = 0; s < alphabet.size(); ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return out;
}

HankelBlock hankel_block(const Wfa& wfa, int max_prefix_len, int max_suffix_len,
                         std::size_t cap) {
  HankelBlock block;
  block.prefixes = enumerate_strings(wfa.alphabet(), max_prefix_len, cap);
  block.suffixes = enumerate_strings(wfa.alphabet(), max_suffix_len, cap);
  const std::size_t cells = block.prefixes.size() * block.suffixes.size();
  if (cells > cap)
    throw_input("Hankel block of " + std::to_string(cells) + " cells exceeds cap " +
                std::to_string(cap));
  const auto rows = static_cast<Eigen::Index>(block.prefixes.size());
  const auto cols = static_cast<Eigen::Index>(block.suffixes.size());
  block.values.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      block.values(i, j) =
          evaluate(wfa, concat(block.prefixes[static_cast<std::size_t>(i)],
                               block.suffixes[static_cast<std::size_t>(j)]));
  return block;
}

bool has_hankel_property(const HankelBlock& block) {
  std::map<Word, double> seen;
  for (std::size_t i = 0; i < block.prefixes.size(); ++i)
    for (std::size_t j = 0; j < block.suffixes.size(); ++j) {
      const double v =
          block.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      auto [it, inserted] = seen.emplace(concat(block.prefixes[i], block.suffixes[j]), v);
      if (!inserted && !(it->second == v)) return false;
    }
  return true;
}

Eigen::Index block_rank(const HankelBlock& block, double rel_cutoff) {
  return linalg::reduced_svd(block.values, rel_cutoff).rank();
}

Vector block_singular_values(const HankelBlock& block) {
  if (block.values.size() == 0) return Vector(0);
  Eigen::BDCSVD<Matrix> svd(block.values);
  return svd.singularValues();
}

void for_each_forward(const Wfa& wfa, int max_len,
                      const std::function<void(int, const Vector&)>& visit,
                      std::size_t cap) {
  check_cap(wfa.symbols(), max_len, cap);
  dfs(
      wfa, max_len, wfa.initial(),
      [](const Matrix& a, const Vector& v) -> Vector { return a.transpose() * v; }, visit);
}

void for_each_backward(const Wfa& wfa, int max_len,
                       const std::function<void(int, const Vector&)>& visit,
                       std::size_t cap) {
  check_cap(wfa.symbols(), max_len, cap);
  dfs(
      wfa, max_len, wfa.final(),
      [](const Matrix& a, const Vector& v) -> Vector { return a * v; }, visit);
}

std::vector<double> abs_length_sums(const Wfa& wfa, int max_len, std::size_t cap) {
  std::vector<double> sums(static_cast<std::size_t>(std::max(max_len, 0)) + 1, 0.0);
  const Vector& fin = wfa.final();
  for_each_forward(
      wfa, max_len,
      [&](int t, const Vector& row) {
        sums[static_cast<std::size_t>(t)] += std::abs(wfa.states() ? row.dot(fin) : 0.0);
      },
      cap);
  return sums;
}

L2Partial brute_l2_partial(const Wfa& a, const Wfa& b, int max_len, std::size_t cap) {
  const Wfa diff = direct_sum(a, b, /*negate_b=*/true);
  L2Partial out;
  out.per_length.assign(static_cast<std::size_t>(std::max(max_len, 0)) + 1, 0.0);
  const Vector& fin = diff.final();
  for_each_forward(
      diff, max_len,
      [&](int t, const Vector& row) {
        const double v = diff.states() ? row.dot(fin) : 0.0;
        out.per_length[static_cast<std::size_t>(t)] += v * v;
      },
      cap);
  for (double d : out.per_length) out.partial_sum += d;

  if (diff.states() == 0) {
    out.tail_certificate = 0.0;
    return out;
  }
  const double q =
      linalg::operator_norm(linalg::kron_sum(diff.transitions(), diff.transitions()));
  const double u = linalg::kron(diff.initial(), diff.initial()).norm();
  const double v = linalg::kron(diff.final(), diff.final()).norm();
  if (u == 0.0 || v == 0.0)
    out.tail_certificate = 0.0;
  else if (q < 1.0)
    out.tail_certificate = u * v * std::pow(q, max_len + 1) / (1.0 - q);
  return out;
}

namespace {

PartialGram gram_partial(const Wfa& wfa, int max_len, bool forward, std::size_t cap) {
  const Eigen::Index n = wfa.states();
  PartialGram out;
  out.gram = Matrix::Zero(n, n);
  std::vector<Matrix> levels(static_cast<std::size_t>(std::max(max_len, 0)) + 1,
                             Matrix::Zero(n, n));
  auto visit = [&](int t, const Vector& v) {
    levels[static_cast<std::size_t>(t)].noalias() += v * v.transpose();
  };
  if (forward)
    for_each_forward(wfa, max_len, visit, cap);
  else
    for_each_backward(wfa, max_len, visit, cap);
  for (const Matrix& m : levels) {
    out.gram += m;
    out.level_mass.push_back(m.norm());
  }
  return out;
}

}  // namespace

PartialGram forward_gram_partial(const Wfa& wfa, int max_len, std::size_t cap) {
  return gram_partial(wfa, max_len, true, cap);
}

PartialGram backward_gram_partial(const Wfa& wfa, int max_len, std::size_t cap) {
  return gram_partial(wfa, max_len, false, cap);
}

}  // namespace wfa::oracle
