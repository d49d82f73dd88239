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

#include "condbisim/lattice.hpp"

#include <sstream>

#include "condbisim/errors.hpp"

namespace condbisim {
namespace {

void check_names(const std::vector<std::string>& names,
                 std::unordered_map<std::string, std::size_t>& index) {
  index.clear();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw ValidationError("condition names must be non-empty");
    if (!index.emplace(names[i], i).second) {
      throw ValidationError("duplicate condition name '" + names[i] + "'");
    }
  }
}

void same_poset(const ConditionPoset& a, const ConditionPoset& b) {
  if (&a != &b) throw PosetMismatch("lattice elements belong to different posets");
}

}  // namespace

PosetPtr ConditionPoset::from_pairs(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::shared_ptr<ConditionPoset> p(new ConditionPoset());
  p->names_ = std::move(elements);
  check_names(p->names_, p->index_);
  const std::size_t n = p->names_.size();

  // below_[q] collects every p with p ≤ q.
  p->below_.assign(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) p->below_[i].set(i);
  for (const auto& [lo, hi] : pairs) {
    p->below_[p->index_of(hi)].set(p->index_of(lo));
  }
  // Warshall on rows: if k ≤ j then everything below k is below j.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k && p->below_[j].test(k)) p->below_[j] |= p->below_[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p->below_[i].test(j) && p->below_[j].test(i)) {
        throw CycleError("order contains a cycle through '" + p->names_[i] +
                         "' and '" + p->names_[j] + "'");
      }
    }
  }
  p->finish();
  return p;
}

PosetPtr ConditionPoset::from_order(
    std::vector<std::string> elements,
    const std::function<bool(std::size_t, std::size_t)>& leq) {
  std::shared_ptr<ConditionPoset> p(new ConditionPoset());
  p->names_ = std::move(elements);
  check_names(p->names_, p->index_);
  const std::size_t n = p->names_.size();
  p->below_.assign(n, Bits(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (leq(i, j)) p->below_[j].set(i);
    }
    if (!p->below_[j].test(j)) {
      throw ValidationError("order is not reflexive at '" + p->names_[j] + "'");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p->below_[i].test(j) && p->below_[j].test(i)) {
        throw CycleError("order is not antisymmetric on '" + p->names_[i] +
                         "' and '" + p->names_[j] + "'");
      }
    }
  }
  p->finish();
  return p;
}

PosetPtr ConditionPoset::discrete(std::vector<std::string> elements) {
  return from_pairs(std::move(elements), {});
}

void ConditionPoset::finish() {
  const std::size_t n = names_.size();
  above_.assign(n, Bits(n));
  discrete_ = true;
  for (std::size_t j = 0; j < n; ++j) {
    for (auto i = below_[j].find_first(); i != Bits::npos; i = below_[j].find_next(i)) {
      above_[i].set(j);
      if (i != j) discrete_ = false;
    }
  }
}

std::optional<std::size_t> ConditionPoset::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ConditionPoset::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownElement("unknown condition '" + std::string(name) + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> ConditionPoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t q = 0; q < n; ++q) {
    for (auto p = below_[q].find_first(); p != Bits::npos; p = below_[q].find_next(p)) {
      if (p == q) continue;
      // p is covered by q iff no r with p < r < q.
      Bits between = above_[p] & below_[q];
      if (between.count() == 2) out.emplace_back(p, q);
    }
  }
  return out;
}

bool ConditionPoset::operator==(const ConditionPoset& other) const {
  return names_ == other.names_ && below_ == other.below_;
}

BoolElement::BoolElement(const ConditionPoset& poset)
    : poset_(&poset), bits_(poset.size()) {}

BoolElement::BoolElement(const ConditionPoset& poset, Bits bits)
    : poset_(&poset), bits_(std::move(bits)) {
  if (bits_.size() != poset.size()) {
    throw ValidationError("bitset length does not match the number of conditions");
  }
}

LatticeElement LatticeElement::bottom(const ConditionPoset& poset) {
  return LatticeElement(poset, Bits(poset.size()));
}

LatticeElement LatticeElement::top(const ConditionPoset& poset) {
  Bits b(poset.size());
  b.set();
  return LatticeElement(poset, std::move(b));
}

bool LatticeElement::is_downward_closed(const ConditionPoset& poset, const Bits& bits) {
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
    if (!poset.below(i).is_subset_of(bits)) return false;
  }
  return true;
}

LatticeElement LatticeElement::from_bits(const ConditionPoset& poset, Bits bits) {
  if (bits.size() != poset.size()) {
    throw ValidationError("bitset length does not match the number of conditions");
  }
  if (!is_downward_closed(poset, bits)) {
    throw ValidationError("set of conditions is not downward-closed");
  }
  return LatticeElement(poset, std::move(bits));
}

LatticeElement LatticeElement::closure_of(const ConditionPoset& poset, const Bits& bits) {
  Bits out(poset.size());
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
    out |= poset.below(i);
  }
  return LatticeElement(poset, std::move(out));
}

LatticeElement LatticeElement::from_names(const ConditionPoset& poset,
                                          const std::vector<std::string>& names,
                                          bool close) {
  Bits b(poset.size());
  for (const auto& n : names) b.set(poset.index_of(n));
  if (close) return closure_of(poset, b);
  if (!is_downward_closed(poset, b)) {
    std::ostringstream msg;
    msg << "guard {";
    for (std::size_t i = 0; i < names.size(); ++i) msg << (i ? "," : "") << names[i];
    msg << "} is not downward-closed";
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) {
      Bits missing = poset.below(i) - b;
      if (missing.any()) {
        msg << ": '" << poset.name(missing.find_first()) << "' <= '" << poset.name(i)
            << "' is missing";
        break;
      }
    }
    throw GuardNotDownwardClosed(msg.str());
  }
  return LatticeElement(poset, std::move(b));
}

std::vector<std::string> LatticeElement::names() const {
  std::vector<std::string> out;
  for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
    out.push_back(poset_->name(i));
  }
  return out;
}

LatticeElement downset(const ConditionPoset& poset, std::string_view s) {
  return downset(poset, poset.index_of(s));
}

LatticeElement downset(const ConditionPoset& poset, std::size_t s) {
  if (s >= poset.size()) throw UnknownElement("condition index out of range");
  return LatticeElement::from_bits(poset, poset.below(s));
}

std::vector<LatticeElement> irreducibles(const ConditionPoset& poset) {
  std::vector<LatticeElement> out;
  out.reserve(poset.size());
  for (std::size_t s = 0; s < poset.size(); ++s) out.push_back(downset(poset, s));
  return out;
}

LatticeElement join(const LatticeElement& l, const LatticeElement& m) {
  same_poset(l.poset(), m.poset());
  return LatticeElement(l.poset(), l.bits() | m.bits());
}

LatticeElement meet(const LatticeElement& l, const LatticeElement& m) {
  same_poset(l.poset(), m.poset());
  return LatticeElement(l.poset(), l.bits() & m.bits());
}

bool leq(const LatticeElement& l, const LatticeElement& m) {
  same_poset(l.poset(), m.poset());
  return l.bits().is_subset_of(m.bits());
}

LatticeElement approximate(const BoolElement& b) {
  const ConditionPoset& poset = b.poset();
  Bits out = b.bits();
  for (auto i = b.bits().find_first(); i != Bits::npos; i = b.bits().find_next(i)) {
    if (!poset.below(i).is_subset_of(b.bits())) out.reset(i);
  }
  return LatticeElement(poset, std::move(out));
}

LatticeElement residuum(const LatticeElement& l, const LatticeElement& m) {
  same_poset(l.poset(), m.poset());
  if (l.bits().is_subset_of(m.bits())) return LatticeElement::top(l.poset());
  return approximate(BoolElement(l.poset(), ~l.bits() | m.bits()));
}

BoolElement complement_bool(const BoolElement& b) {
  return BoolElement(b.poset(), ~b.bits());
}

BoolElement join_bool(const BoolElement& l, const BoolElement& m) {
  same_poset(l.poset(), m.poset());
  return BoolElement(l.poset(), l.bits() | m.bits());
}

BoolElement meet_bool(const BoolElement& l, const BoolElement& m) {
  same_poset(l.poset(), m.poset());
  return BoolElement(l.poset(), l.bits() & m.bits());
}

ExplicitAlgebra::ExplicitAlgebra(PosetPtr poset) : poset_(std::move(poset)) {}

LatticeElement ExplicitAlgebra::join(const Element& a, const Element& b) const {
  return condbisim::join(a, b);
}

LatticeElement ExplicitAlgebra::meet(const Element& a, const Element& b) const {
  return condbisim::meet(a, b);
}

LatticeElement ExplicitAlgebra::residuum(const Element& a, const Element& b) const {
  return condbisim::residuum(a, b);
}

bool ExplicitAlgebra::leq(const Element& a, const Element& b) const {
  return condbisim::leq(a, b);
}

LatticeElement ExplicitAlgebra::negate(const Element& a) const {
  // In O(Φ, ≤) this is the pseudo-complement a → 0; it coincides with the
  // set complement exactly when the order is discrete.
  return condbisim::residuum(a, bottom());
}

PowersetAlgebra::PowersetAlgebra(PosetPtr poset) : poset_(std::move(poset)) {}

BoolElement PowersetAlgebra::top() const {
  Bits b(poset_->size());
  b.set();
  return BoolElement(*poset_, std::move(b));
}

BoolElement PowersetAlgebra::residuum(const Element& a, const Element& b) const {
  return join_bool(complement_bool(a), b);
}

bool PowersetAlgebra::leq(const Element& a, const Element& b) const {
  same_poset(a.poset(), b.poset());
  return a.bits().is_subset_of(b.bits());
}

}  // namespace condbisim
