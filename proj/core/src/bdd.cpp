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

#include "condbisim/bdd.hpp"

#include <algorithm>
#include <sstream>

#include "condbisim/errors.hpp"

namespace condbisim::bdd {
namespace {

constexpr std::uint32_t kZero = 0;
constexpr std::uint32_t kOne = 1;

Manager& manager_of(Bdd a, Bdd b) {
  if (!a.valid() || !b.valid()) throw ManagerMismatch("uninitialised BDD handle");
  if (a.manager() != b.manager()) {
    throw ManagerMismatch("BDD handles belong to different managers");
  }
  return *a.manager();
}

Manager& manager_of(Bdd a) {
  if (!a.valid()) throw ManagerMismatch("uninitialised BDD handle");
  return *a.manager();
}

}  // namespace

Bdd Bdd::operator&(const Bdd& other) const { return apply_and(*this, other); }
Bdd Bdd::operator|(const Bdd& other) const { return apply_or(*this, other); }
Bdd Bdd::operator!() const { return apply_not(*this); }

std::size_t Manager::TripleHash::operator()(const Node& n) const noexcept {
  std::uint64_t h = (static_cast<std::uint64_t>(n.high) << 32) | n.low;
  h ^= static_cast<std::uint64_t>(n.var) * 0x9E3779B97F4A7C15ULL;
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ULL;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

Manager::Manager(std::size_t num_vars) : num_vars_(num_vars) {
  const auto sentinel = static_cast<std::uint32_t>(num_vars);
  nodes_.push_back({sentinel, kZero, kZero});
  nodes_.push_back({sentinel, kOne, kOne});
}

void Manager::own(Bdd a) const {
  if (a.manager() != this) throw ManagerMismatch("BDD handle belongs to another manager");
}

std::uint32_t Manager::mk(std::uint32_t var, std::uint32_t high, std::uint32_t low) {
  if (high == low) return low;
  Node key{var, high, low};
  auto [it, inserted] = unique_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
  if (inserted) nodes_.push_back(key);
  return it->second;
}

Bdd Manager::var(std::size_t i) {
  if (i >= num_vars_) throw UnknownFeature("variable index out of range");
  return {this, mk(static_cast<std::uint32_t>(i), kOne, kZero)};
}

Bdd Manager::nvar(std::size_t i) {
  if (i >= num_vars_) throw UnknownFeature("variable index out of range");
  return {this, mk(static_cast<std::uint32_t>(i), kZero, kOne)};
}

Bdd Manager::make(std::size_t var, Bdd high, Bdd low) {
  own(high);
  own(low);
  if (var >= num_vars_) throw UnknownFeature("variable index out of range");
  if (var_of(high) <= var || var_of(low) <= var) {
    throw PreconditionViolation("children must test later variables than their parent");
  }
  return {this, mk(static_cast<std::uint32_t>(var), high.id(), low.id())};
}

Bdd Manager::minterm(Configuration c) {
  std::uint32_t r = kOne;
  for (std::size_t k = num_vars_; k-- > 0;) {
    const auto v = static_cast<std::uint32_t>(k);
    r = ((c >> k) & 1U) ? mk(v, r, kZero) : mk(v, kZero, r);
  }
  return {this, r};
}

std::uint32_t Manager::not_rec(std::uint32_t a) {
  if (a == kZero) return kOne;
  if (a == kOne) return kZero;
  Node key{static_cast<std::uint32_t>(Op::kNot), a, 0};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const Node n = nodes_[a];
  const std::uint32_t r = mk(n.var, not_rec(n.high), not_rec(n.low));
  cache_.emplace(key, r);
  return r;
}

std::uint32_t Manager::apply_rec(Op op, std::uint32_t a, std::uint32_t b) {
  switch (op) {
    case Op::kAnd:
      if (a == kZero || b == kZero) return kZero;
      if (a == kOne) return b;
      if (b == kOne || a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case Op::kOr:
      if (a == kOne || b == kOne) return kOne;
      if (a == kZero) return b;
      if (b == kZero || a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case Op::kDiff:
      if (a == kZero || b == kOne || a == b) return kZero;
      if (b == kZero) return a;
      if (a == kOne) return not_rec(b);
      break;
    default:
      break;
  }
  Node key{static_cast<std::uint32_t>(op), a, b};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const Node na = nodes_[a];
  const Node nb = nodes_[b];
  const std::uint32_t v = std::min(na.var, nb.var);
  const std::uint32_t a1 = na.var == v ? na.high : a;
  const std::uint32_t a0 = na.var == v ? na.low : a;
  const std::uint32_t b1 = nb.var == v ? nb.high : b;
  const std::uint32_t b0 = nb.var == v ? nb.low : b;
  const std::uint32_t hi = apply_rec(op, a1, b1);
  const std::uint32_t lo = apply_rec(op, a0, b0);
  const std::uint32_t r = mk(v, hi, lo);
  cache_.emplace(key, r);
  return r;
}

Bdd Manager::apply_and(Bdd a, Bdd b) {
  own(a);
  own(b);
  return {this, apply_rec(Op::kAnd, a.id(), b.id())};
}

Bdd Manager::apply_or(Bdd a, Bdd b) {
  own(a);
  own(b);
  return {this, apply_rec(Op::kOr, a.id(), b.id())};
}

Bdd Manager::apply_not(Bdd a) {
  own(a);
  return {this, not_rec(a.id())};
}

Bdd Manager::apply_diff(Bdd a, Bdd b) {
  own(a);
  own(b);
  return {this, apply_rec(Op::kDiff, a.id(), b.id())};
}

std::uint32_t Manager::restrict_rec(std::uint32_t a, std::uint32_t var, bool value,
                                    std::unordered_map<std::uint32_t, std::uint32_t>& memo) {
  const Node n = nodes_[a];
  if (n.var > var) return a;  // terminals carry the largest index
  if (n.var == var) return value ? n.high : n.low;
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  const std::uint32_t r =
      mk(n.var, restrict_rec(n.high, var, value, memo), restrict_rec(n.low, var, value, memo));
  memo.emplace(a, r);
  return r;
}

Bdd Manager::restrict(Bdd a, std::size_t var, bool value) {
  own(a);
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  return {this, restrict_rec(a.id(), static_cast<std::uint32_t>(var), value, memo)};
}

Bdd Manager::exists(Bdd a, std::size_t var) {
  return apply_or(restrict(a, var, false), restrict(a, var, true));
}

std::size_t Manager::var_of(Bdd a) const {
  own(a);
  return nodes_[a.id()].var;
}

Bdd Manager::high(Bdd a) const {
  own(a);
  return {const_cast<Manager*>(this), nodes_[a.id()].high};
}

Bdd Manager::low(Bdd a) const {
  own(a);
  return {const_cast<Manager*>(this), nodes_[a.id()].low};
}

bool Manager::evaluate(Bdd a, Configuration c) const {
  own(a);
  std::uint32_t n = a.id();
  while (n > kOne) {
    const Node& node = nodes_[n];
    n = ((c >> node.var) & 1U) ? node.high : node.low;
  }
  return n == kOne;
}

double Manager::sat_count(Bdd a) const {
  own(a);
  // fraction[n] = share of assignments to variables >= var(n) accepted.
  std::unordered_map<std::uint32_t, double> fraction;
  auto rec = [&](auto&& self, std::uint32_t n) -> double {
    if (n == kZero) return 0.0;
    if (n == kOne) return 1.0;
    if (auto it = fraction.find(n); it != fraction.end()) return it->second;
    const Node& node = nodes_[n];
    const double f = 0.5 * (self(self, node.high) + self(self, node.low));
    fraction.emplace(n, f);
    return f;
  };
  double total = rec(rec, a.id());
  for (std::size_t i = 0; i < num_vars_; ++i) total *= 2.0;
  return total;
}

std::vector<Configuration> Manager::satisfying(Bdd a) const {
  own(a);
  if (num_vars_ >= 64) throw PreconditionViolation("too many variables to enumerate");
  std::vector<Configuration> out;
  auto rec = [&](auto&& self, std::uint32_t n, std::size_t level, Configuration c) -> void {
    if (n == kZero) return;
    if (level == num_vars_) {
      out.push_back(c);
      return;
    }
    const Node& node = nodes_[n];
    if (node.var == level) {
      self(self, node.low, level + 1, c);
      self(self, node.high, level + 1, c | (Configuration{1} << level));
    } else {
      self(self, n, level + 1, c);
      self(self, n, level + 1, c | (Configuration{1} << level));
    }
  };
  rec(rec, a.id(), 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Manager::inner_node_count(Bdd a) const {
  own(a);
  std::vector<std::uint32_t> stack{a.id()};
  std::unordered_map<std::uint32_t, bool> seen;
  std::size_t count = 0;
  while (!stack.empty()) {
    const std::uint32_t n = stack.back();
    stack.pop_back();
    if (n <= kOne || !seen.emplace(n, true).second) continue;
    ++count;
    stack.push_back(nodes_[n].high);
    stack.push_back(nodes_[n].low);
  }
  return count;
}

void Manager::check_universe(const FeatureUniverse& u) const {
  if (u.size() != num_vars_) {
    throw ManagerMismatch("feature universe does not match the manager's variables");
  }
}

bool Manager::is_downward_closed(Bdd a, const FeatureUniverse& u) {
  own(a);
  check_universe(u);
  std::vector<std::uint32_t> stack{a.id()};
  std::unordered_map<std::uint32_t, bool> seen;
  while (!stack.empty()) {
    const std::uint32_t n = stack.back();
    stack.pop_back();
    if (n <= kOne || !seen.emplace(n, true).second) continue;
    const Node node = nodes_[n];
    if (u.is_upgrade(node.var) && apply_rec(Op::kDiff, node.low, node.high) != kZero) {
      return false;
    }
    stack.push_back(node.high);
    stack.push_back(node.low);
  }
  return true;
}

std::uint32_t Manager::approx_rec(std::uint32_t a, Configuration upgrade) {
  if (a <= kOne) return a;
  auto& memo = approx_cache_[upgrade];
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  const Node n = nodes_[a];
  const std::uint32_t hi = approx_rec(n.high, upgrade);
  std::uint32_t r;
  if ((upgrade >> n.var) & 1U) {
    r = mk(n.var, hi, apply_rec(Op::kAnd, hi, approx_rec(n.low, upgrade)));
  } else {
    r = mk(n.var, hi, approx_rec(n.low, upgrade));
  }
  approx_cache_[upgrade].emplace(a, r);
  return r;
}

Bdd Manager::approx(Bdd a, const FeatureUniverse& u) {
  own(a);
  check_universe(u);
  return {this, approx_rec(a.id(), u.upgrade_mask())};
}

Bdd Manager::close_down(Bdd a, const FeatureUniverse& u) {
  own(a);
  check_universe(u);
  for (std::size_t f = 0; f < num_vars_; ++f) {
    if (u.is_upgrade(f)) a = apply_or(a, apply_and(var(f), exists(a, f)));
  }
  return a;
}

std::string Manager::to_dot(Bdd a, const FeatureUniverse& u, const std::string& name) const {
  own(a);
  check_universe(u);
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  std::vector<std::uint32_t> stack{a.id()};
  std::unordered_map<std::uint32_t, bool> seen;
  std::vector<std::uint32_t> order;
  while (!stack.empty()) {
    const std::uint32_t n = stack.back();
    stack.pop_back();
    if (!seen.emplace(n, true).second) continue;
    order.push_back(n);
    if (n > kOne) {
      stack.push_back(nodes_[n].low);
      stack.push_back(nodes_[n].high);
    }
  }
  std::sort(order.begin(), order.end());
  for (std::uint32_t n : order) {
    if (n <= kOne) {
      out << "  n" << n << " [shape=box,label=\"" << n << "\"];\n";
    } else {
      out << "  n" << n << " [shape=circle,label=\"" << u.name(nodes_[n].var) << "\"];\n";
    }
  }
  for (std::uint32_t n : order) {
    if (n <= kOne) continue;
    out << "  n" << n << " -> n" << nodes_[n].high << ";\n";
    out << "  n" << n << " -> n" << nodes_[n].low << " [style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

Bdd from_expr(Manager& m, const FeatureUniverse& u, const FeatureExpr& e) {
  using Kind = FeatureExpr::Kind;
  if (u.size() != m.num_vars()) {
    throw ManagerMismatch("feature universe does not match the manager's variables");
  }
  switch (e.kind()) {
    case Kind::kTrue:
      return m.one();
    case Kind::kFalse:
      return m.zero();
    case Kind::kAtom:
      return m.var(u.index_of(e.name()));
    case Kind::kNot:
      return m.apply_not(from_expr(m, u, e.lhs()));
    case Kind::kAnd:
      return m.apply_and(from_expr(m, u, e.lhs()), from_expr(m, u, e.rhs()));
    case Kind::kOr:
      return m.apply_or(from_expr(m, u, e.lhs()), from_expr(m, u, e.rhs()));
    case Kind::kImplies:
      return m.apply_or(m.apply_not(from_expr(m, u, e.lhs())), from_expr(m, u, e.rhs()));
  }
  return m.zero();
}

Bdd apply_and(Bdd a, Bdd b) { return manager_of(a, b).apply_and(a, b); }
Bdd apply_or(Bdd a, Bdd b) { return manager_of(a, b).apply_or(a, b); }
Bdd apply_not(Bdd a) { return manager_of(a).apply_not(a); }
bool evaluate(Bdd b, Configuration c) { return manager_of(b).evaluate(b, c); }

bool is_downward_closed(Bdd b, const FeatureUniverse& u) {
  return manager_of(b).is_downward_closed(b, u);
}

Bdd approx_bdd(Bdd b, const FeatureUniverse& u) { return manager_of(b).approx(b, u); }

bool is_element_of(Bdd b, Bdd d, const FeatureUniverse& u) {
  Manager& m = manager_of(b, d);
  if (!m.implies(b, d)) return false;
  if (m.is_downward_closed(d, u)) return m.is_downward_closed(b, u);
  // Closed within ⟦d⟧ iff ⌊b ∨ ¬d⌋ ∧ d gives b back.
  return m.apply_and(m.approx(m.apply_or(b, m.apply_not(d)), u), d) == b;
}

Bdd residuum_bdd(Bdd b1, Bdd b2, Bdd d, const FeatureUniverse& u) {
  Manager& m = manager_of(b1, b2);
  manager_of(b1, d);
  if (!is_element_of(b1, d, u)) {
    throw PreconditionViolation("residuum: first operand is not an element of O([[d]], <=)");
  }
  if (!is_element_of(b2, d, u)) {
    throw PreconditionViolation("residuum: second operand is not an element of O([[d]], <=)");
  }
  Bdd body = m.apply_or(m.apply_not(b1), b2);
  if (!m.is_downward_closed(d, u)) body = m.apply_or(body, m.apply_not(d));
  return m.apply_and(m.approx(body, u), d);
}

SymbolicAlgebra::SymbolicAlgebra(Manager& manager, FeatureUniverse universe, Bdd diagram)
    : mgr_(&manager), universe_(std::move(universe)), d_(diagram) {
  if (diagram.manager() != mgr_) throw ManagerMismatch("diagram belongs to another manager");
  d_closed_ = mgr_->is_downward_closed(d_, universe_);
  // Configurations strictly below some element of ⟦d⟧: switch on at least
  // one upgrade feature that was off, then close downwards.
  Bdd strictly_below = mgr_->zero();
  for (std::size_t f = 0; f < universe_.size(); ++f) {
    if (!universe_.is_upgrade(f)) continue;
    Bdd lifted = mgr_->exists(mgr_->apply_diff(d_, mgr_->var(f)), f);
    strictly_below = mgr_->apply_or(strictly_below, mgr_->apply_and(mgr_->var(f), lifted));
  }
  strictly_below = mgr_->close_down(strictly_below, universe_);
  boolean_ = mgr_->apply_and(strictly_below, d_).is_zero();
}

Bdd SymbolicAlgebra::residuum(Element a, Element b) const {
  if (a.is_zero() || mgr_->implies(a, b)) return d_;
  Bdd body = mgr_->apply_or(mgr_->apply_not(a), b);
  if (!d_closed_) body = mgr_->apply_or(body, mgr_->apply_not(d_));
  return mgr_->apply_and(mgr_->approx(body, universe_), d_);
}

}  // namespace condbisim::bdd
