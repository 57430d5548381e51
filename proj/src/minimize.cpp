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

#include "wfa/minimize.hpp"

#include <algorithm>
#include <deque>

namespace wfa {
namespace {

enum class Direction { kForward, kBackward };

// Removes the component of v in the span of the first r rows of q, twice
// (classical Gram-Schmidt with reorthogonalization).
Vector orthogonalize(const Matrix& q, Eigen::Index r, Vector v) {
  for (int pass = 0; pass < 2; ++pass) {
    if (r == 0) break;
    const Vector coeff = q.topRows(r) * v;
    v.noalias() -= q.topRows(r).transpose() * coeff;
  }
  return v;
}

// The start vector is dropped when its norm is at most rel_cutoff * start_scale;
// a projected automaton passes the norm of the vector it was projected from,
// so exact cancellation that left only rounding noise yields an empty span.
BasisSpan closure(const Wfa& wfa, Direction dir, const NumericOptions& opts,
                  double start_scale) {
  const Eigen::Index n = wfa.states();
  Matrix q(n, n);
  std::vector<Word> words;
  Eigen::Index r = 0;

  const Vector& start = dir == Direction::kForward ? wfa.initial() : wfa.final();
  const double start_norm = start.norm();
  if (n > 0 && start_norm > 0.0 && start_norm > opts.rel_cutoff * start_scale) {
    q.row(0) = (start / start_norm).transpose();
    words.emplace_back();
    r = 1;
  }

  double step_scale = 0.0;
  for (const Matrix& m : wfa.transitions())
    step_scale = std::max(step_scale, linalg::operator_norm(m));
  const double threshold = opts.rel_cutoff * step_scale;

  // Rows are visited in insertion order; candidates from row i are tried in
  // alphabet order, so words come out in length-lexicographic order.
  std::deque<Eigen::Index> pending;
  if (r > 0) pending.push_back(0);
  while (!pending.empty() && r < n) {
    const Eigen::Index row = pending.front();
    pending.pop_front();
    for (std::size_t s = 0; s < wfa.symbols() && r < n; ++s) {
      const Matrix& m = wfa.transition(s);
      Vector cand = dir == Direction::kForward
                        ? Vector(m.transpose() * q.row(row).transpose())
                        : Vector(m * q.row(row).transpose());
      cand = orthogonalize(q, r, std::move(cand));
      const double norm = cand.norm();
      if (norm > threshold && norm > 0.0) {
        q.row(r) = (cand / norm).transpose();
        Word w = words[static_cast<std::size_t>(row)];
        if (dir == Direction::kForward)
          w.push_back(s);
        else
          w.insert(w.begin(), s);
        words.push_back(std::move(w));
        pending.push_back(r);
        ++r;
      }
    }
  }

  BasisSpan out;
  out.basis = q.topRows(r);
  out.words = std::move(words);
  return out;
}

// Restriction to the span of orthonormal rows `b`: with the span invariant
// under the relevant action, A' = B A B^T is exact.
Wfa project(const Wfa& wfa, const Matrix& b) {
  std::vector<Matrix> trans;
  trans.reserve(wfa.symbols());
  for (const Matrix& m : wfa.transitions()) trans.push_back(b * m * b.transpose());
  return Wfa(wfa.alphabet(), b * wfa.initial(), b * wfa.final(), std::move(trans));
}

}  // namespace

BasisSpan forward_basis(const Wfa& wfa, const NumericOptions& opts) {
  return closure(wfa, Direction::kForward, opts, 0.0);
}

BasisSpan backward_basis(const Wfa& wfa, const NumericOptions& opts) {
  return closure(wfa, Direction::kBackward, opts, 0.0);
}

Wfa minimize(const Wfa& wfa, const NumericOptions& opts) {
  const BasisSpan fwd = forward_basis(wfa, opts);
  Wfa reached = fwd.dim() < wfa.states() ? project(wfa, fwd.basis) : wfa;
  const BasisSpan bwd = closure(reached, Direction::kBackward, opts, wfa.final().norm());
  if (bwd.dim() < reached.states()) return project(reached, bwd.basis);
  return reached;
}

Eigen::Index rank(const Wfa& wfa, const NumericOptions& opts) {
  return minimize(wfa, opts).states();
}

}  // namespace wfa
