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

#ifndef CONDBISIM_MODELS_HPP_
#define CONDBISIM_MODELS_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "condbisim/features.hpp"
#include "condbisim/lattice.hpp"
#include "condbisim/matrix.hpp"

namespace condbisim {

/// A strict order <_A on action indices; greater(a) holds every a' > a.
class ActionOrder {
 public:
  ActionOrder() = default;
  explicit ActionOrder(std::size_t num_actions);
  /// Transitively closes `pairs` (lower, higher). Throws ValidationError if
  /// the closure is reflexive and UnknownElement for undeclared actions.
  static ActionOrder from_pairs(const std::vector<std::string>& actions,
                                const std::vector<std::pair<std::string, std::string>>& pairs);

  std::size_t size() const { return greater_.size(); }
  bool empty() const;
  bool less(std::size_t a, std::size_t b) const { return greater_[a].test(b); }
  const Bits& greater(std::size_t a) const { return greater_[a]; }
  /// All (lower, higher) pairs of the closed order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  friend bool operator==(const ActionOrder&, const ActionOrder&) = default;

 private:
  std::vector<Bits> greater_;
};

/// States, actions and one guard matrix per action: the shape shared by
/// every lattice-labelled system the fixpoint engine consumes.
template <class E>
struct GuardedLts {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  ActionOrder precedence;
  std::vector<Matrix<E>> guards;  // guards[a](x, x')

  std::size_t num_states() const { return states.size(); }
  std::size_t num_actions() const { return actions.size(); }
};

/// Lattice transition system over O(Φ, ≤); absent transitions carry 0.
struct Lats : GuardedLts<LatticeElement> {
  PosetPtr poset;

  std::size_t state_index(std::string_view name) const;
  std::size_t action_index(std::string_view name) const;
};

/// Conditional transition system: successors(x, a, φ) ⊆ X, monotone in φ
/// towards smaller conditions.
struct Cts {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  ActionOrder precedence;
  PosetPtr poset;
  std::vector<std::vector<std::vector<Bits>>> successors;  // [x][a][φ]

  /// Empty transition function over the given signature.
  static Cts empty(std::vector<std::string> states, std::vector<std::string> actions,
                   ActionOrder precedence, PosetPtr poset);
  /// Adds x -a,φ-> y together with every transition implied by
  /// monotonicity (all φ' ≤ φ).
  void add(std::size_t x, std::size_t a, std::size_t phi, std::size_t y);
  /// Throws ValidationError if some f(x, a) is not monotone.
  void validate() const;

  std::size_t state_index(std::string_view name) const;
  std::size_t action_index(std::string_view name) const;
};

bool operator==(const Cts& a, const Cts& b);
bool operator==(const Lats& a, const Lats& b);

/// Featured transition system with upgrade features and a feature diagram.
struct Fts {
  struct Transition {
    std::size_t from;
    std::size_t action;
    std::size_t to;
    FeatureExpr guard;
  };

  FeatureUniverse features;
  std::vector<std::string> states;
  std::vector<std::string> actions;
  ActionOrder precedence;
  std::vector<Transition> transitions;
  FeatureExpr diagram;

  /// Throws UnknownFeature / ValidationError.
  void validate() const;
  std::size_t state_index(std::string_view name) const;
};

/// Plain labelled transition system: successors[x][a] sorted ascending.
struct Lts {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<std::vector<std::vector<std::size_t>>> successors;

  friend bool operator==(const Lts&, const Lts&) = default;
};

enum class GuardPolicy { kReject, kClose };

Lats cts_to_lats(const Cts& c);
Cts lats_to_cts(const Lats& l);

/// The conditions ⟦d⟧ ordered by upgrade_leq, in increasing bitmask order,
/// named by FeatureUniverse::configuration_name.
struct ConfigurationPoset {
  PosetPtr poset;
  std::vector<Configuration> configurations;
};
ConfigurationPoset configuration_poset(const FeatureUniverse& u, const FeatureExpr& diagram);

/// α(x,a,y) = ⟦γ(x,a,y) ∧ d⟧ over O(⟦d⟧, ≤). Guards that are not
/// downward-closed raise GuardNotDownwardClosed unless `policy` is kClose.
Lats fts_to_lats(const Fts& f, GuardPolicy policy = GuardPolicy::kReject);
/// Both systems over one shared condition poset and the united alphabet.
/// Throws ModelMismatch unless features, upgrade set and ⟦d⟧ coincide.
std::pair<Lats, Lats> fts_to_lats(const Fts& left, const Fts& right,
                                  GuardPolicy policy = GuardPolicy::kReject);

/// The LTS f_φ.
Lts instantiate(const Cts& c, std::size_t phi);
Lts instantiate(const Cts& c, std::string_view phi);
/// The LTS f̄_φ: a transition survives only if no <_A-greater action is
/// enabled at the same source under φ.
Lts instantiate_prec(const Cts& c, std::size_t phi);
Lts instantiate_prec(const Cts& c, std::string_view phi);

/// The scaling family with one disconnected 3-state component per feature.
/// The two systems differ only in the guard of 0 -b-> 2 (true vs f).
std::pair<Fts, Fts> gen_benchmark(std::size_t n);
std::pair<Lats, Lats> gen_benchmark_lats(std::size_t n);

/// The union of two alphabets (first system's order first) with the common
/// precedence order. Throws PrecedenceMismatch if the orders disagree.
struct AlphabetUnion {
  std::vector<std::string> actions;
  ActionOrder precedence;
};
AlphabetUnion unite_alphabets(const std::vector<std::string>& a, const ActionOrder& pa,
                              const std::vector<std::string>& b, const ActionOrder& pb);

/// Brings two systems onto one alphabet (the union, first system's order
/// first) and one poset object. Throws ModelMismatch if the condition
/// posets differ and PrecedenceMismatch if the precedence orders disagree.
std::pair<Lats, Lats> align(const Lats& left, const Lats& right);
std::pair<Cts, Cts> align(const Cts& left, const Cts& right);

}  // namespace condbisim

#endif  // CONDBISIM_MODELS_HPP_
