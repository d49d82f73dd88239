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

#ifndef CONDBISIM_BDD_HPP_
#define CONDBISIM_BDD_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "condbisim/features.hpp"

namespace condbisim::bdd {

class Manager;

/// Handle to a node of a Manager's unique table. Two handles of the same
/// manager denote the same Boolean function iff they compare equal.
class Bdd {
 public:
  Bdd() = default;

  Manager* manager() const { return mgr_; }
  std::uint32_t id() const { return id_; }
  bool valid() const { return mgr_ != nullptr; }
  bool is_zero() const { return id_ == 0; }
  bool is_one() const { return id_ == 1; }
  bool is_terminal() const { return id_ < 2; }

  friend bool operator==(const Bdd& a, const Bdd& b) {
    return a.mgr_ == b.mgr_ && a.id_ == b.id_;
  }

  Bdd operator&(const Bdd& other) const;
  Bdd operator|(const Bdd& other) const;
  Bdd operator!() const;

 private:
  friend class Manager;
  Bdd(Manager* mgr, std::uint32_t id) : mgr_(mgr), id_(id) {}

  Manager* mgr_ = nullptr;
  std::uint32_t id_ = 0;
};

/// A reduced ordered BDD store over `num_vars` variables with variable i
/// tested before variable i+1.
///
/// Nodes are hash-consed in a unique table, so every Boolean function has
/// exactly one handle. Apply and approximation results are memoised for the
/// lifetime of the manager; nothing is ever garbage-collected. A manager is
/// single-writer: construction calls must be serialised by the caller.
class Manager {
 public:
  explicit Manager(std::size_t num_vars);
  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  std::size_t num_vars() const { return num_vars_; }

  Bdd zero() { return {this, 0}; }
  Bdd one() { return {this, 1}; }
  Bdd constant(bool value) { return value ? one() : zero(); }
  Bdd var(std::size_t i);
  Bdd nvar(std::size_t i);
  /// The reducing node constructor: returns `low` when high == low and the
  /// existing node when (i, high, low) is already in the unique table.
  Bdd make(std::size_t var, Bdd high, Bdd low);
  /// The characteristic function of a single configuration.
  Bdd minterm(Configuration c);

  Bdd apply_and(Bdd a, Bdd b);
  Bdd apply_or(Bdd a, Bdd b);
  Bdd apply_not(Bdd a);
  /// a ∧ ¬b.
  Bdd apply_diff(Bdd a, Bdd b);
  /// ⟦a⟧ ⊆ ⟦b⟧.
  bool implies(Bdd a, Bdd b) { return apply_diff(a, b).is_zero(); }
  Bdd restrict(Bdd a, std::size_t var, bool value);
  Bdd exists(Bdd a, std::size_t var);

  std::size_t var_of(Bdd a) const;
  Bdd high(Bdd a) const;
  Bdd low(Bdd a) const;

  bool evaluate(Bdd a, Configuration c) const;
  /// Number of satisfying configurations over all num_vars() variables.
  double sat_count(Bdd a) const;
  /// Satisfying configurations in increasing bitmask order; requires
  /// num_vars() < 64.
  std::vector<Configuration> satisfying(Bdd a) const;
  /// Inner nodes reachable from `a` (terminals excluded).
  std::size_t inner_node_count(Bdd a) const;
  /// Total number of nodes ever created, terminals included.
  std::size_t store_size() const { return nodes_.size(); }

  // Upgrade-order structure. `u` must have num_vars() features.
  bool is_downward_closed(Bdd a, const FeatureUniverse& u);
  Bdd approx(Bdd a, const FeatureUniverse& u);
  Bdd close_down(Bdd a, const FeatureUniverse& u);

  std::string to_dot(Bdd a, const FeatureUniverse& u, const std::string& name = "bdd") const;

 private:
  struct Node {
    std::uint32_t var;
    std::uint32_t high;
    std::uint32_t low;
  };
  struct TripleHash {
    std::size_t operator()(const Node& n) const noexcept;
  };
  struct TripleEq {
    bool operator()(const Node& a, const Node& b) const noexcept {
      return a.var == b.var && a.high == b.high && a.low == b.low;
    }
  };
  enum class Op : std::uint32_t { kAnd, kOr, kDiff, kNot, kApprox, kExists0, kExists1 };

  void own(Bdd a) const;
  std::uint32_t mk(std::uint32_t var, std::uint32_t high, std::uint32_t low);
  std::uint32_t apply_rec(Op op, std::uint32_t a, std::uint32_t b);
  std::uint32_t not_rec(std::uint32_t a);
  std::uint32_t approx_rec(std::uint32_t a, Configuration upgrade);
  std::uint32_t restrict_rec(std::uint32_t a, std::uint32_t var, bool value,
                             std::unordered_map<std::uint32_t, std::uint32_t>& memo);
  void check_universe(const FeatureUniverse& u) const;

  std::size_t num_vars_;
  std::vector<Node> nodes_;
  std::unordered_map<Node, std::uint32_t, TripleHash, TripleEq> unique_;
  std::unordered_map<Node, std::uint32_t, TripleHash, TripleEq> cache_;
  std::unordered_map<Configuration, std::unordered_map<std::uint32_t, std::uint32_t>>
      approx_cache_;
};

/// Canonical ROBDD of ⟦e⟧. Throws UnknownFeature for undeclared atoms.
Bdd from_expr(Manager& m, const FeatureUniverse& u, const FeatureExpr& e);

// Connectives on handles; throw ManagerMismatch for handles of different
// managers.
Bdd apply_and(Bdd a, Bdd b);
Bdd apply_or(Bdd a, Bdd b);
Bdd apply_not(Bdd a);

bool evaluate(Bdd b, Configuration c);

/// True iff ⟦b⟧ is closed under switching on upgrade features.
bool is_downward_closed(Bdd b, const FeatureUniverse& u);

/// The best downward-closed approximation of b.
Bdd approx_bdd(Bdd b, const FeatureUniverse& u);

/// True iff ⟦b⟧ ⊆ ⟦d⟧ and ⟦b⟧ is downward-closed within (⟦d⟧, ≤).
bool is_element_of(Bdd b, Bdd d, const FeatureUniverse& u);

/// b1 → b2 in O(⟦d⟧, ≤). Uses ⌊¬b1 ∨ b2⌋ ∧ d when d is downward-closed and
/// ⌊¬b1 ∨ b2 ∨ ¬d⌋ ∧ d otherwise. Throws PreconditionViolation naming the
/// input that is not an element of O(⟦d⟧, ≤).
Bdd residuum_bdd(Bdd b1, Bdd b2, Bdd d, const FeatureUniverse& u);

/// O(⟦d⟧, ≤) over a Manager, for the generic fixpoint engine. Elements are
/// handles; join and meet are ∨ and ∧ and the top element is d.
class SymbolicAlgebra {
 public:
  using Element = Bdd;
  // Every operation writes to the shared unique table and caches.
  static constexpr bool kConcurrentEntries = false;

  SymbolicAlgebra(Manager& manager, FeatureUniverse universe, Bdd diagram);

  Manager& manager() const { return *mgr_; }
  const FeatureUniverse& universe() const { return universe_; }
  Bdd diagram() const { return d_; }
  bool diagram_downward_closed() const { return d_closed_; }

  Element top() const { return d_; }
  Element bottom() const { return mgr_->zero(); }
  Element join(Element a, Element b) const { return mgr_->apply_or(a, b); }
  Element meet(Element a, Element b) const { return mgr_->apply_and(a, b); }
  Element residuum(Element a, Element b) const;
  bool leq(Element a, Element b) const { return mgr_->implies(a, b); }
  /// Boolean negation relative to d; only meaningful when is_boolean().
  Element negate(Element a) const { return mgr_->apply_diff(d_, a); }
  /// True iff the upgrade order restricted to ⟦d⟧ is discrete.
  bool is_boolean() const { return boolean_; }
  /// |⟦d⟧|.
  double condition_count() const { return mgr_->sat_count(d_); }

 private:
  Manager* mgr_;
  FeatureUniverse universe_;
  Bdd d_;
  bool d_closed_;
  bool boolean_;
};

}  // namespace condbisim::bdd

#endif  // CONDBISIM_BDD_HPP_
