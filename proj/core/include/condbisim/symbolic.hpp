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

#ifndef CONDBISIM_SYMBOLIC_HPP_
#define CONDBISIM_SYMBOLIC_HPP_

#include <memory>
#include <string>
#include <vector>

#include "condbisim/bdd.hpp"
#include "condbisim/lattice.hpp"
#include "condbisim/models.hpp"

namespace condbisim {

/// Two systems encoded over one BDD manager, ready for the fixpoint engine
/// with bdd::SymbolicAlgebra.
///
/// Featured systems are encoded directly: conditions are the configurations
/// of ⟦d⟧. Condition-poset systems (CTS/LaTS) use one upgrade variable per
/// condition and map φ to the configuration ↑φ, which embeds (Φ, ≤) into the
/// upgrade order; d is then the set of these configurations.
struct SymbolicPair {
  std::unique_ptr<bdd::Manager> manager;
  FeatureUniverse universe;  // in manager variable order
  bdd::Bdd diagram;
  GuardedLts<bdd::Bdd> left;
  GuardedLts<bdd::Bdd> right;

  bdd::SymbolicAlgebra algebra() const;

  /// Conditions in report order with the configuration standing for each.
  /// For featured systems this enumerates ⟦d⟧ (at most 63 features).
  struct Conditions {
    std::vector<std::string> names;
    std::vector<Configuration> points;
  };
  const Conditions& conditions() const;
  /// The members of `e` as a bitset over conditions().
  Bits decode(bdd::Bdd e) const;

  // Featured systems: the universe in declaration order, which fixes the
  // condition order and names. Poset systems fill conditions_cache eagerly.
  FeatureUniverse declared;
  mutable std::unique_ptr<Conditions> conditions_cache;
};

/// Encodes two featured systems. They must declare the same features,
/// upgrade set and (semantically) the same diagram. `var_order`, if
/// non-empty, is a permutation of the feature names. Guards are restricted
/// to d and then checked (kReject) or closed (kClose) within O(⟦d⟧, ≤).
SymbolicPair encode_fts(const Fts& left, const Fts& right,
                        GuardPolicy policy = GuardPolicy::kReject,
                        const std::vector<std::string>& var_order = {});

/// Encodes two lattice systems over the same condition poset (at most 64
/// conditions). `var_order`, if non-empty, permutes the condition variables.
SymbolicPair encode_lats(const Lats& left, const Lats& right,
                         const std::vector<std::string>& var_order = {});

/// Configuration of `from`-order bitmask `c` re-expressed over `to`; both
/// universes hold the same feature names.
Configuration remap_configuration(Configuration c, const FeatureUniverse& from,
                                  const FeatureUniverse& to);

}  // namespace condbisim

#endif  // CONDBISIM_SYMBOLIC_HPP_
