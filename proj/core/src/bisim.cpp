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

#include "condbisim/bisim.hpp"

#include <algorithm>
#include <numeric>

namespace condbisim {
namespace {

std::pair<Lats, Lats> share_signature(const Lats& left, const Lats& right) {
  if (left.poset == right.poset && left.actions == right.actions &&
      left.precedence == right.precedence) {
    return {left, right};
  }
  return align(left, right);
}

// Greatest bisimulation between two LTSs contained in `allowed`
// (row-major |X|×|Y|), by naive refinement.
std::vector<char> refine(const Lts& l, const Lts& r, std::vector<char> allowed) {
  const std::size_t nx = l.states.size();
  const std::size_t ny = r.states.size();
  auto in = [&](std::size_t x, std::size_t y) { return allowed[x * ny + y] != 0; };
  auto matched = [&](const std::vector<std::size_t>& moves, const std::vector<std::size_t>& answers,
                     bool left_moves) {
    for (std::size_t m : moves) {
      bool ok = false;
      for (std::size_t k : answers) {
        if (left_moves ? in(m, k) : in(k, m)) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        if (!in(x, y)) continue;
        for (std::size_t a = 0; a < l.actions.size(); ++a) {
          const auto& mx = l.successors[x][a];
          const auto& my = r.successors[y][a];
          if (!matched(mx, my, true) || !matched(my, mx, false)) {
            allowed[x * ny + y] = 0;
            changed = true;
            break;
          }
        }
      }
    }
  }
  return allowed;
}

}  // namespace

BisimResult<LatticeElement> greatest_bisimulation(const Lats& left, const Lats& right,
                                                  BisimOptions opts) {
  auto [l, r] = share_signature(left, right);
  ExplicitAlgebra alg(l.poset);
  return greatest_bisimulation(alg, static_cast<const GuardedLts<LatticeElement>&>(l),
                               static_cast<const GuardedLts<LatticeElement>&>(r), opts);
}

std::vector<Violation> check_transfer(const Matrix<LatticeElement>& r, const Lats& left_in,
                                      const Lats& right_in, bool precedence) {
  auto [left, right] = share_signature(left_in, right_in);
  ExplicitAlgebra alg(left.poset);
  const std::size_t nx = left.num_states();
  const std::size_t ny = right.num_states();
  if (r.rows() != nx || r.cols() != ny) throw DimensionMismatch("relation shape mismatch");
  std::vector<std::vector<LatticeElement>> el, er;
  if (precedence) {
    el = escape_terms(alg, left);
    er = escape_terms(alg, right);
  }
  std::vector<Violation> out;
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const Bits& rel = r(x, y).bits();
      for (std::size_t a = 0; a < left.num_actions(); ++a) {
        const auto& al = left.guards[a];
        const auto& be = right.guards[a];
        for (auto phi = rel.find_first(); phi != Bits::npos; phi = rel.find_next(phi)) {
          auto unmatched = [&](const Matrix<LatticeElement>& mover, std::size_t from,
                               const Matrix<LatticeElement>& answerer, std::size_t other,
                               const std::vector<std::vector<LatticeElement>>& esc,
                               bool left_moves) {
            if (precedence && esc[a][from].contains(phi)) return false;
            const std::size_t n_move = left_moves ? nx : ny;
            const std::size_t n_answer = left_moves ? ny : nx;
            for (std::size_t m = 0; m < n_move; ++m) {
              if (!mover(from, m).contains(phi)) continue;
              bool ok = false;
              for (std::size_t k = 0; k < n_answer && !ok; ++k) {
                ok = answerer(other, k).contains(phi) &&
                     (left_moves ? r(m, k) : r(k, m)).contains(phi);
              }
              if (!ok) return true;
            }
            return false;
          };
          if (unmatched(al, x, be, y, el, true)) {
            out.push_back({x, y, a, phi, Direction::kLeftToRight});
          }
          if (unmatched(be, y, al, x, er, false)) {
            out.push_back({x, y, a, phi, Direction::kRightToLeft});
          }
        }
      }
    }
  }
  return out;
}

Matrix<LatticeElement> brute_force_oracle(const Cts& left_in, const Cts& right_in,
                                          bool precedence, std::size_t cap) {
  const auto [left, right] = align(left_in, right_in);
  const ConditionPoset& p = *left.poset;
  const std::size_t nx = left.states.size();
  const std::size_t ny = right.states.size();
  if (static_cast<double>(nx) * static_cast<double>(ny) * static_cast<double>(p.size()) >
      static_cast<double>(cap)) {
    throw CapExceeded("brute-force oracle: |X|·|Y|·|Φ| exceeds the cap of " +
                      std::to_string(cap));
  }
  // Strictly smaller conditions have strictly smaller down-sets, so this
  // order visits every φ' < φ before φ.
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p.below(a).count() < p.below(b).count();
  });
  std::vector<std::vector<char>> family(p.size());
  for (std::size_t phi : order) {
    std::vector<char> allowed(nx * ny, 1);
    const Bits& below = p.below(phi);
    for (auto q = below.find_first(); q != Bits::npos; q = below.find_next(q)) {
      if (q == phi) continue;
      for (std::size_t k = 0; k < allowed.size(); ++k) allowed[k] &= family[q][k];
    }
    const Lts l = precedence ? instantiate_prec(left, phi) : instantiate(left, phi);
    const Lts r = precedence ? instantiate_prec(right, phi) : instantiate(right, phi);
    family[phi] = refine(l, r, std::move(allowed));
  }
  Matrix<LatticeElement> out(nx, ny, LatticeElement::bottom(p));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      Bits bits(p.size());
      for (std::size_t phi = 0; phi < p.size(); ++phi) {
        if (family[phi][x * ny + y]) bits.set(phi);
      }
      out(x, y) = LatticeElement::from_bits(p, std::move(bits));
    }
  }
  return out;
}

namespace {

GuardedLts<BoolElement> as_boolean(const Lats& l) {
  GuardedLts<BoolElement> out;
  out.states = l.states;
  out.actions = l.actions;
  out.precedence = l.precedence;
  const std::size_t n = l.num_states();
  for (const auto& g : l.guards) {
    Matrix<BoolElement> m(n, n, BoolElement(*l.poset));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = g(i, j).as_bool();
    }
    out.guards.push_back(std::move(m));
  }
  return out;
}

}  // namespace

BooleanVsLattice boolean_vs_lattice(const Matrix<LatticeElement>& r, const Lats& left_in,
                                    const Lats& right_in) {
  auto [left, right] = share_signature(left_in, right_in);
  ExplicitAlgebra lat(left.poset);
  PowersetAlgebra boo(left.poset);
  const auto bl = as_boolean(left);
  const auto br = as_boolean(right);
  const std::size_t nx = left.num_states();
  const std::size_t ny = right.num_states();

  Matrix<BoolElement> rb(nx, ny, BoolElement(*left.poset));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) rb(x, y) = r(x, y).as_bool();
  }
  const auto fb = apply_F_matrix(boo, rb, bl, br);
  const auto fl = apply_F_matrix(lat, r, left, right);
  BooleanVsLattice out;
  out.approximation_agrees = true;
  for (std::size_t x = 0; x < nx && out.approximation_agrees; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (!(approximate(fb(x, y)) == fl(x, y))) {
        out.approximation_agrees = false;
        break;
      }
    }
  }

  BisimOptions opts;
  opts.keep_trace = false;
  const auto gb = greatest_bisimulation(boo, bl, br, opts);
  const auto gl = greatest_bisimulation(lat, left, right, opts);
  for (std::size_t x = 0; x < nx && !out.strict_witness; ++x) {
    for (std::size_t y = 0; y < ny && !out.strict_witness; ++y) {
      const Bits extra = gb.relation(x, y).bits() - gl.relation(x, y).bits();
      if (extra.any()) out.strict_witness = std::make_tuple(x, y, extra.find_first());
    }
  }
  return out;
}

bool fitting_check(const Lats& l, const Matrix<LatticeElement>& r) {
  if (l.num_actions() != 1) {
    throw PreconditionViolation("the matrix-inequality check needs exactly one action");
  }
  if (!l.poset->is_discrete()) {
    throw PreconditionViolation("the matrix-inequality check needs a Boolean condition algebra");
  }
  if (r.rows() != l.num_states() || r.cols() != l.num_states()) {
    throw DimensionMismatch("relation shape mismatch");
  }
  ExplicitAlgebra alg(l.poset);
  const auto& a = l.guards[0];
  const auto rt = transpose(alg, r);
  return leq_entrywise(alg, std_mul(alg, r, a), std_mul(alg, a, r)) &&
         leq_entrywise(alg, std_mul(alg, rt, a), std_mul(alg, a, rt));
}

}  // namespace condbisim
