// Copyright 2026 The condbisim Authors
//
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

#ifndef CONDBISIM_BISIM_HPP_
#define CONDBISIM_BISIM_HPP_

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "condbisim/errors.hpp"
#include "condbisim/lattice.hpp"
#include "condbisim/matrix.hpp"
#include "condbisim/models.hpp"

namespace condbisim {

enum class FForm { kDirect, kMatrix, kBoolean };

struct BisimOptions {
  bool precedence = false;
  FForm form = FForm::kMatrix;
  // Worker threads for entry computation; ignored by backends whose
  // elements cannot be built concurrently.
  unsigned threads = 1;
  bool keep_trace = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// R_0 = 1, R_1, ..., R_n with R_n = R_{n-1}.
template <class E>
struct FixpointTrace {
  std::vector<Matrix<E>> relations;
  std::size_t iterations = 0;  // applications of F (or G)
};

template <class E>
struct BisimResult {
  Matrix<E> relation;
  FixpointTrace<E> trace;  // only R* when keep_trace is off
};

namespace detail {

template <class E>
void check_compatible(const GuardedLts<E>& l, const GuardedLts<E>& r) {
  if (l.actions != r.actions) {
    throw ModelMismatch("the two systems have different alphabets; align them first");
  }
  if (!(l.precedence == r.precedence)) {
    throw PrecedenceMismatch("the two systems carry different precedence orders");
  }
  if (l.guards.size() != l.actions.size() || r.guards.size() != r.actions.size()) {
    throw ModelMismatch("guard matrices do not match the alphabet");
  }
}

template <class Fn>
void for_rows(std::size_t rows, unsigned threads, bool allowed, Fn&& fn) {
  if (!allowed || threads <= 1 || rows < 2) {
    for (std::size_t i = 0; i < rows; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, rows);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < rows; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// esc[a][x] = ⊔_{a' > a, x''} α(x, a', x''): the conditions under which
/// some higher-priority action is enabled at x.
template <LatticeAlgebra A>
std::vector<std::vector<typename A::Element>> escape_terms(
    const A& alg, const GuardedLts<typename A::Element>& m) {
  using E = typename A::Element;
  const std::size_t n = m.num_states();
  std::vector<E> enabled_any;  // enabled_any[a * n + x]
  enabled_any.reserve(m.num_actions() * n);
  for (std::size_t a = 0; a < m.num_actions(); ++a) {
    for (std::size_t x = 0; x < n; ++x) {
      E acc = alg.bottom();
      for (std::size_t y = 0; y < n; ++y) acc = alg.join(acc, m.guards[a](x, y));
      enabled_any.push_back(acc);
    }
  }
  std::vector<std::vector<E>> esc(m.num_actions(), std::vector<E>(n, alg.bottom()));
  if (m.precedence.size() == 0) return esc;
  for (std::size_t a = 0; a < m.num_actions(); ++a) {
    const Bits& higher = m.precedence.greater(a);
    for (auto b = higher.find_first(); b != Bits::npos; b = higher.find_next(b)) {
      for (std::size_t x = 0; x < n; ++x) esc[a][x] = alg.join(esc[a][x], enabled_any[b * n + x]);
    }
  }
  return esc;
}

/// F (or G when `esc_left`/`esc_right` are given) by direct evaluation of
/// F1(R)(x,y) = ⊓_{a,x'} α(x,a,x') → (⊔_{y'} β(y,a,y') ⊓ R(x',y') ⊔ esc(x,a))
/// and the symmetric F2.
template <LatticeAlgebra A>
Matrix<typename A::Element> apply_F_direct(
    const A& alg, const Matrix<typename A::Element>& r,
    const GuardedLts<typename A::Element>& left, const GuardedLts<typename A::Element>& right,
    const std::vector<std::vector<typename A::Element>>* esc_left = nullptr,
    const std::vector<std::vector<typename A::Element>>* esc_right = nullptr,
    unsigned threads = 1) {
  using E = typename A::Element;
  detail::check_compatible(left, right);
  const std::size_t nx = left.num_states();
  const std::size_t ny = right.num_states();
  if (r.rows() != nx || r.cols() != ny) throw DimensionMismatch("relation shape mismatch");
  const E zero = alg.bottom();
  Matrix<E> out(nx, ny, alg.top());
  detail::for_rows(nx, threads, A::kConcurrentEntries, [&](std::size_t x) {
    for (std::size_t y = 0; y < ny; ++y) {
      E acc = alg.top();
      for (std::size_t a = 0; a < left.num_actions() && !(acc == zero); ++a) {
        const auto& al = left.guards[a];
        const auto& be = right.guards[a];
        for (std::size_t xp = 0; xp < nx; ++xp) {
          if (al(x, xp) == zero) continue;
          E answer = esc_left ? (*esc_left)[a][x] : zero;
          for (std::size_t yp = 0; yp < ny; ++yp) {
            if (be(y, yp) == zero) continue;
            answer = alg.join(answer, alg.meet(be(y, yp), r(xp, yp)));
          }
          acc = alg.meet(acc, alg.residuum(al(x, xp), answer));
        }
        for (std::size_t yp = 0; yp < ny; ++yp) {
          if (be(y, yp) == zero) continue;
          E answer = esc_right ? (*esc_right)[a][y] : zero;
          for (std::size_t xp = 0; xp < nx; ++xp) {
            if (al(x, xp) == zero) continue;
            answer = alg.join(answer, alg.meet(al(x, xp), r(xp, yp)));
          }
          acc = alg.meet(acc, alg.residuum(be(y, yp), answer));
        }
      }
      out(x, y) = std::move(acc);
    }
  });
  return out;
}

/// F(R) = ⊓_a (α_a ⊗ (R·β_aᵀ)) ⊓ (β_a ⊗ (α_a·R)ᵀ)ᵀ.
template <LatticeAlgebra A>
Matrix<typename A::Element> apply_F_matrix(const A& alg, const Matrix<typename A::Element>& r,
                                           const GuardedLts<typename A::Element>& left,
                                           const GuardedLts<typename A::Element>& right) {
  using E = typename A::Element;
  detail::check_compatible(left, right);
  Matrix<E> out(left.num_states(), right.num_states(), alg.top());
  for (std::size_t a = 0; a < left.num_actions(); ++a) {
    const auto& al = left.guards[a];
    const auto& be = right.guards[a];
    const auto f1 = otimes_mul(alg, al, std_mul(alg, r, transpose(alg, be)));
    const auto f2 = otimes_mul(alg, be, transpose(alg, std_mul(alg, al, r)));
    out = meet_entrywise(alg, out, meet_entrywise(alg, f1, transpose(alg, f2)));
  }
  return out;
}

/// F(R) = ⊓_a ¬(α_a·¬(R·β_aᵀ)) ⊓ ¬(¬(α_a·R)·β_aᵀ); valid only for
/// Boolean condition algebras.
template <LatticeAlgebra A>
Matrix<typename A::Element> apply_F_boolean(const A& alg, const Matrix<typename A::Element>& r,
                                            const GuardedLts<typename A::Element>& left,
                                            const GuardedLts<typename A::Element>& right) {
  using E = typename A::Element;
  detail::check_compatible(left, right);
  if (!alg.is_boolean()) {
    throw PreconditionViolation("the Boolean form of F needs a discrete condition order");
  }
  Matrix<E> out(left.num_states(), right.num_states(), alg.top());
  for (std::size_t a = 0; a < left.num_actions(); ++a) {
    const auto& al = left.guards[a];
    const auto bt = transpose(alg, right.guards[a]);
    const auto f1 =
        negate_entrywise(alg, std_mul(alg, al, negate_entrywise(alg, std_mul(alg, r, bt))));
    const auto f2 =
        negate_entrywise(alg, std_mul(alg, negate_entrywise(alg, std_mul(alg, al, r)), bt));
    out = meet_entrywise(alg, out, meet_entrywise(alg, f1, f2));
  }
  return out;
}

/// G(R) in matrix form: like apply_F_matrix, but the escape term of the
/// row state joins the right-hand side of each residuum.
template <LatticeAlgebra A>
Matrix<typename A::Element> apply_G(const A& alg, const Matrix<typename A::Element>& r,
                                    const GuardedLts<typename A::Element>& left,
                                    const GuardedLts<typename A::Element>& right,
                                    const std::vector<std::vector<typename A::Element>>& esc_left,
                                    const std::vector<std::vector<typename A::Element>>& esc_right) {
  using E = typename A::Element;
  detail::check_compatible(left, right);
  const E zero = alg.bottom();
  // ⊓_{x'} u(x,x') → (v(x',y) ⊔ esc[x]).
  auto guarded = [&](const Matrix<E>& u, const Matrix<E>& v, const std::vector<E>& esc) {
    Matrix<E> out(u.rows(), v.cols(), alg.top());
    for (std::size_t x = 0; x < u.rows(); ++x) {
      for (std::size_t y = 0; y < v.cols(); ++y) {
        E acc = alg.top();
        for (std::size_t k = 0; k < u.cols(); ++k) {
          if (u(x, k) == zero) continue;
          acc = alg.meet(acc, alg.residuum(u(x, k), alg.join(v(k, y), esc[x])));
        }
        out(x, y) = std::move(acc);
      }
    }
    return out;
  };
  Matrix<E> out(left.num_states(), right.num_states(), alg.top());
  for (std::size_t a = 0; a < left.num_actions(); ++a) {
    const auto& al = left.guards[a];
    const auto& be = right.guards[a];
    const auto g1 = guarded(al, std_mul(alg, r, transpose(alg, be)), esc_left[a]);
    const auto g2 = guarded(be, transpose(alg, std_mul(alg, al, r)), esc_right[a]);
    out = meet_entrywise(alg, out, meet_entrywise(alg, g1, transpose(alg, g2)));
  }
  return out;
}

/// One step of the operator selected by `opts` (F or, with precedence, G).
template <LatticeAlgebra A>
Matrix<typename A::Element> apply_step(const A& alg, const Matrix<typename A::Element>& r,
                                       const GuardedLts<typename A::Element>& left,
                                       const GuardedLts<typename A::Element>& right,
                                       const BisimOptions& opts) {
  if (opts.precedence) {
    const auto el = escape_terms(alg, left);
    const auto er = escape_terms(alg, right);
    if (opts.form == FForm::kDirect) {
      return apply_F_direct(alg, r, left, right, &el, &er, opts.threads);
    }
    return apply_G(alg, r, left, right, el, er);
  }
  switch (opts.form) {
    case FForm::kDirect:
      return apply_F_direct(alg, r, left, right, nullptr, nullptr, opts.threads);
    case FForm::kBoolean:
      return apply_F_boolean(alg, r, left, right);
    case FForm::kMatrix:
      break;
  }
  return apply_F_matrix(alg, r, left, right);
}

/// Greatest fixpoint of F (or G) by iteration from the top relation,
/// stopping at the first i with R_{i+1} = R_i.
///
/// Throws SafeguardExceeded after |X|·|Y|·|Φ| + 1 steps, which can only
/// happen if the operator is not monotone, and DeadlineExceeded once
/// `opts.deadline` has passed at the start of an iteration.
template <LatticeAlgebra A>
BisimResult<typename A::Element> greatest_bisimulation(
    const A& alg, const GuardedLts<typename A::Element>& left,
    const GuardedLts<typename A::Element>& right, BisimOptions opts = {}) {
  using E = typename A::Element;
  detail::check_compatible(left, right);
  if (opts.form == FForm::kBoolean && !alg.is_boolean()) opts.form = FForm::kMatrix;
  std::vector<std::vector<E>> el, er;
  if (opts.precedence) {
    el = escape_terms(alg, left);
    er = escape_terms(alg, right);
  }
  const double bound = static_cast<double>(left.num_states()) *
                           static_cast<double>(right.num_states()) * alg.condition_count() +
                       1.0;
  BisimResult<E> result;
  Matrix<E> current(left.num_states(), right.num_states(), alg.top());
  if (opts.keep_trace) result.trace.relations.push_back(current);
  for (std::size_t i = 1;; ++i) {
    if (static_cast<double>(i) > bound) {
      throw SafeguardExceeded("fixpoint iteration exceeded " + std::to_string(bound) +
                              " steps; the operator is not monotone");
    }
    if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
      throw DeadlineExceeded("fixpoint iteration ran past its deadline");
    }
    Matrix<E> next;
    if (opts.precedence) {
      next = opts.form == FForm::kDirect
                 ? apply_F_direct(alg, current, left, right, &el, &er, opts.threads)
                 : apply_G(alg, current, left, right, el, er);
    } else {
      next = apply_step(alg, current, left, right, opts);
    }
    result.trace.iterations = i;
    const bool stable = next == current;
    if (opts.keep_trace) result.trace.relations.push_back(next);
    current = std::move(next);
    if (stable) break;
  }
  if (!opts.keep_trace) result.trace.relations.push_back(current);
  result.relation = std::move(current);
  return result;
}

/// R ⊑ F(R) (or G(R) with precedence).
template <LatticeAlgebra A>
bool is_bisimulation(const A& alg, const Matrix<typename A::Element>& r,
                     const GuardedLts<typename A::Element>& left,
                     const GuardedLts<typename A::Element>& right, bool precedence = false) {
  BisimOptions opts;
  opts.precedence = precedence;
  opts.form = FForm::kDirect;
  return leq_entrywise(alg, r, apply_step(alg, r, left, right, opts));
}

// Explicit-backend services.

enum class Direction { kLeftToRight, kRightToLeft };

/// An unmatched move: φ ∈ R(x, y) and one side moves with `action` under
/// ↓φ, but the other side has no answer that stays in R under φ.
struct Violation {
  std::size_t left;
  std::size_t right;
  std::size_t action;
  std::size_t condition;  // the irreducible ↓condition
  Direction direction;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// All transfer-property violations of R, ordered by (x, y, action,
/// condition, direction). Empty iff R is a (precedence-aware) bisimulation.
std::vector<Violation> check_transfer(const Matrix<LatticeElement>& r, const Lats& left,
                                      const Lats& right, bool precedence = false);

/// Greatest lattice bisimulation over O(Φ, ≤) using the explicit backend.
BisimResult<LatticeElement> greatest_bisimulation(const Lats& left, const Lats& right,
                                                  BisimOptions opts = {});

/// Conditional bisimilarity straight from the definition: for each φ taken
/// bottom-up, the greatest classical bisimulation of the instantiated LTSs
/// (f_φ, or f̄_φ with precedence) contained in the relations already found
/// for all φ' < φ. Throws CapExceeded when |X|·|Y|·|Φ| > cap.
Matrix<LatticeElement> brute_force_oracle(const Cts& left, const Cts& right,
                                          bool precedence = false,
                                          std::size_t cap = 2'000'000);

/// Comparison of the operator over O(Φ, ≤) with the one over P(Φ).
struct BooleanVsLattice {
  bool approximation_agrees = false;  // ⌊F_B(R)⌋ = F_L(R)
  // Some (x, y, φ) bisimilar over P(Φ) but not over O(Φ, ≤), if any.
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> strict_witness;
};
BooleanVsLattice boolean_vs_lattice(const Matrix<LatticeElement>& r, const Lats& left,
                                    const Lats& right);

/// R·α ⊑ α·R and Rᵀ·α ⊑ α·Rᵀ for a single-action system over a discrete
/// condition order. Throws PreconditionViolation otherwise.
bool fitting_check(const Lats& l, const Matrix<LatticeElement>& r);

}  // namespace condbisim

#endif  // CONDBISIM_BISIM_HPP_
