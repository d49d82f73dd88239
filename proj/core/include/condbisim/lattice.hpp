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

#ifndef CONDBISIM_LATTICE_HPP_
#define CONDBISIM_LATTICE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace condbisim {

using Bits = boost::dynamic_bitset<std::uint64_t>;

class ConditionPoset;
using PosetPtr = std::shared_ptr<const ConditionPoset>;

/// A finite partially ordered set of named conditions (Φ, ≤).
///
/// The full order relation is stored as one bitset per element in both
/// directions, so ↓s and ↑s are O(1) lookups. Instances are immutable and
/// are shared between models through PosetPtr.
class ConditionPoset {
 public:
  /// Builds the reflexive-transitive closure of `pairs` (each pair (p, q)
  /// meaning p ≤ q). Throws UnknownElement for undeclared names, CycleError
  /// if the closure is not antisymmetric and ValidationError for empty or
  /// duplicate names.
  static PosetPtr from_pairs(
      std::vector<std::string> elements,
      const std::vector<std::pair<std::string, std::string>>& pairs);

  /// Builds a poset from an order predicate that must already be a partial
  /// order. Reflexivity and antisymmetry are verified; transitivity is the
  /// caller's contract.
  static PosetPtr from_order(std::vector<std::string> elements,
                             const std::function<bool(std::size_t, std::size_t)>& leq);

  /// The discrete order on `elements`.
  static PosetPtr discrete(std::vector<std::string> elements);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownElement.
  std::size_t index_of(std::string_view name) const;

  bool leq(std::size_t lhs, std::size_t rhs) const { return below_[rhs].test(lhs); }
  const Bits& below(std::size_t s) const { return below_.at(s); }
  const Bits& above(std::size_t s) const { return above_.at(s); }
  bool is_discrete() const { return discrete_; }

  /// Covering pairs (p, q) with p < q and nothing strictly in between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  /// Structural equality: same names in the same order with the same ≤.
  bool operator==(const ConditionPoset& other) const;

 private:
  ConditionPoset() = default;
  void finish();

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Bits> below_;
  std::vector<Bits> above_;
  bool discrete_ = false;
};

/// An arbitrary subset of Φ: an element of the Boolean algebra P(Φ) that
/// O(Φ, ≤) embeds into.
class BoolElement {
 public:
  explicit BoolElement(const ConditionPoset& poset);
  BoolElement(const ConditionPoset& poset, Bits bits);

  const ConditionPoset& poset() const { return *poset_; }
  const Bits& bits() const { return bits_; }
  bool contains(std::size_t i) const { return bits_.test(i); }
  bool empty() const { return bits_.none(); }

  friend bool operator==(const BoolElement& a, const BoolElement& b) {
    return a.poset_ == b.poset_ && a.bits_ == b.bits_;
  }

 private:
  const ConditionPoset* poset_;
  Bits bits_;
};

/// A downward-closed subset of Φ, i.e. an element of O(Φ, ≤). The
/// constructors guarantee the closure invariant.
class LatticeElement {
 public:
  static LatticeElement bottom(const ConditionPoset& poset);
  static LatticeElement top(const ConditionPoset& poset);
  /// Throws ValidationError if `bits` is not downward-closed.
  static LatticeElement from_bits(const ConditionPoset& poset, Bits bits);
  /// Smallest downward-closed superset of `bits`.
  static LatticeElement closure_of(const ConditionPoset& poset, const Bits& bits);
  static LatticeElement from_names(const ConditionPoset& poset,
                                   const std::vector<std::string>& names,
                                   bool close);
  static bool is_downward_closed(const ConditionPoset& poset, const Bits& bits);

  const ConditionPoset& poset() const { return *poset_; }
  const Bits& bits() const { return bits_; }
  bool contains(std::size_t i) const { return bits_.test(i); }
  bool empty() const { return bits_.none(); }
  bool is_top() const { return bits_.all(); }
  std::size_t count() const { return bits_.count(); }
  BoolElement as_bool() const { return BoolElement(*poset_, bits_); }
  std::vector<std::string> names() const;

  friend bool operator==(const LatticeElement& a, const LatticeElement& b) {
    return a.poset_ == b.poset_ && a.bits_ == b.bits_;
  }

 private:
  friend LatticeElement approximate(const BoolElement& b);
  friend LatticeElement join(const LatticeElement& l, const LatticeElement& m);
  friend LatticeElement meet(const LatticeElement& l, const LatticeElement& m);
  LatticeElement(const ConditionPoset& poset, Bits bits)
      : poset_(&poset), bits_(std::move(bits)) {}

  const ConditionPoset* poset_;
  Bits bits_;
};

/// ↓s. Throws UnknownElement.
LatticeElement downset(const ConditionPoset& poset, std::string_view s);
LatticeElement downset(const ConditionPoset& poset, std::size_t s);

/// The join-irreducibles of O(Φ, ≤) in element order: ↓s for every s.
std::vector<LatticeElement> irreducibles(const ConditionPoset& poset);

// Lattice operations. All throw PosetMismatch when the operands come from
// different posets.
LatticeElement join(const LatticeElement& l, const LatticeElement& m);
LatticeElement meet(const LatticeElement& l, const LatticeElement& m);
bool leq(const LatticeElement& l, const LatticeElement& m);

/// ⌊b⌋: the largest downward-closed subset of b.
LatticeElement approximate(const BoolElement& b);

/// l →_L m, computed as ⌊¬l ∪ m⌋.
LatticeElement residuum(const LatticeElement& l, const LatticeElement& m);

BoolElement complement_bool(const BoolElement& b);
BoolElement join_bool(const BoolElement& l, const BoolElement& m);
BoolElement meet_bool(const BoolElement& l, const BoolElement& m);

/// O(Φ, ≤) as an algebra for the generic fixpoint engine.
class ExplicitAlgebra {
 public:
  using Element = LatticeElement;
  static constexpr bool kConcurrentEntries = true;

  explicit ExplicitAlgebra(PosetPtr poset);

  const ConditionPoset& poset() const { return *poset_; }
  const PosetPtr& poset_ptr() const { return poset_; }

  Element top() const { return LatticeElement::top(*poset_); }
  Element bottom() const { return LatticeElement::bottom(*poset_); }
  Element join(const Element& a, const Element& b) const;
  Element meet(const Element& a, const Element& b) const;
  Element residuum(const Element& a, const Element& b) const;
  bool leq(const Element& a, const Element& b) const;
  /// Boolean negation; only meaningful when is_boolean().
  Element negate(const Element& a) const;
  bool is_boolean() const { return poset_->is_discrete(); }
  /// |Φ|, used for the fixpoint safeguard bound.
  double condition_count() const { return static_cast<double>(poset_->size()); }

 private:
  PosetPtr poset_;
};

/// P(Φ) with the Boolean residuum ¬l ∪ m.
class PowersetAlgebra {
 public:
  using Element = BoolElement;
  static constexpr bool kConcurrentEntries = true;

  explicit PowersetAlgebra(PosetPtr poset);

  Element top() const;
  Element bottom() const { return BoolElement(*poset_); }
  Element join(const Element& a, const Element& b) const { return join_bool(a, b); }
  Element meet(const Element& a, const Element& b) const { return meet_bool(a, b); }
  Element residuum(const Element& a, const Element& b) const;
  bool leq(const Element& a, const Element& b) const;
  Element negate(const Element& a) const { return complement_bool(a); }
  bool is_boolean() const { return true; }
  double condition_count() const { return static_cast<double>(poset_->size()); }

 private:
  PosetPtr poset_;
};

}  // namespace condbisim

#endif  // CONDBISIM_LATTICE_HPP_
