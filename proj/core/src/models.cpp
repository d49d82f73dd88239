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

#include "condbisim/models.hpp"

#include <algorithm>
#include <set>

#include "condbisim/errors.hpp"

namespace condbisim {
namespace {

std::size_t index_in(const std::vector<std::string>& names, std::string_view name,
                     const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw UnknownElement(std::string("unknown ") + what + " '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - names.begin());
}

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw ValidationError(std::string(what) + " names must be non-empty");
    if (!seen.insert(n).second) {
      throw ValidationError(std::string("duplicate ") + what + " '" + n + "'");
    }
  }
}

std::set<std::pair<std::string, std::string>> named_pairs(const ActionOrder& order,
                                                          const std::vector<std::string>& actions) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [lo, hi] : order.pairs()) out.emplace(actions[lo], actions[hi]);
  return out;
}

}  // namespace

ActionOrder::ActionOrder(std::size_t num_actions) : greater_(num_actions, Bits(num_actions)) {}

ActionOrder ActionOrder::from_pairs(
    const std::vector<std::string>& actions,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  ActionOrder order(actions.size());
  for (const auto& [lo, hi] : pairs) {
    order.greater_[index_in(actions, lo, "action")].set(index_in(actions, hi, "action"));
  }
  const std::size_t n = actions.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (order.greater_[i].test(k)) order.greater_[i] |= order.greater_[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (order.greater_[i].test(i)) {
      throw ValidationError("action precedence is not a strict order (cycle through '" +
                            actions[i] + "')");
    }
  }
  return order;
}

bool ActionOrder::empty() const {
  return std::all_of(greater_.begin(), greater_.end(), [](const Bits& b) { return b.none(); });
}

std::vector<std::pair<std::size_t, std::size_t>> ActionOrder::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < greater_.size(); ++a) {
    for (auto b = greater_[a].find_first(); b != Bits::npos; b = greater_[a].find_next(b)) {
      out.emplace_back(a, b);
    }
  }
  return out;
}

AlphabetUnion unite_alphabets(const std::vector<std::string>& a, const ActionOrder& pa,
                              const std::vector<std::string>& b, const ActionOrder& pb) {
  auto left = named_pairs(pa.size() ? pa : ActionOrder(a.size()), a);
  auto right = named_pairs(pb.size() ? pb : ActionOrder(b.size()), b);
  if (left != right) {
    throw PrecedenceMismatch("the two models declare different action precedence orders");
  }
  AlphabetUnion out;
  out.actions = a;
  for (const auto& act : b) {
    if (std::find(out.actions.begin(), out.actions.end(), act) == out.actions.end()) {
      out.actions.push_back(act);
    }
  }
  out.precedence = ActionOrder::from_pairs(out.actions, {left.begin(), left.end()});
  return out;
}


std::size_t Lats::state_index(std::string_view name) const {
  return index_in(states, name, "state");
}

std::size_t Lats::action_index(std::string_view name) const {
  return index_in(actions, name, "action");
}

Cts Cts::empty(std::vector<std::string> states, std::vector<std::string> actions,
               ActionOrder precedence, PosetPtr poset) {
  check_unique(states, "state");
  check_unique(actions, "action");
  Cts c;
  c.states = std::move(states);
  c.actions = std::move(actions);
  c.precedence = precedence.size() == 0 ? ActionOrder(c.actions.size()) : std::move(precedence);
  c.poset = std::move(poset);
  c.successors.assign(
      c.states.size(),
      std::vector<std::vector<Bits>>(c.actions.size(),
                                     std::vector<Bits>(c.poset->size(), Bits(c.states.size()))));
  return c;
}

void Cts::add(std::size_t x, std::size_t a, std::size_t phi, std::size_t y) {
  const Bits& below = poset->below(phi);
  for (auto p = below.find_first(); p != Bits::npos; p = below.find_next(p)) {
    successors[x][a][p].set(y);
  }
}

void Cts::validate() const {
  for (std::size_t x = 0; x < states.size(); ++x) {
    for (std::size_t a = 0; a < actions.size(); ++a) {
      for (std::size_t phi = 0; phi < poset->size(); ++phi) {
        const Bits& below = poset->below(phi);
        for (auto p = below.find_first(); p != Bits::npos; p = below.find_next(p)) {
          if (!successors[x][a][phi].is_subset_of(successors[x][a][p])) {
            throw ValidationError("transition function of '" + states[x] + "' under '" +
                                  actions[a] + "' is not monotone between '" +
                                  poset->name(p) + "' and '" + poset->name(phi) + "'");
          }
        }
      }
    }
  }
}

std::size_t Cts::state_index(std::string_view name) const {
  return index_in(states, name, "state");
}

std::size_t Cts::action_index(std::string_view name) const {
  return index_in(actions, name, "action");
}

bool operator==(const Cts& a, const Cts& b) {
  return a.states == b.states && a.actions == b.actions && a.precedence == b.precedence &&
         *a.poset == *b.poset && a.successors == b.successors;
}

bool operator==(const Lats& a, const Lats& b) {
  if (a.states != b.states || a.actions != b.actions || !(a.precedence == b.precedence) ||
      !(*a.poset == *b.poset) || a.guards.size() != b.guards.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.guards.size(); ++k) {
    const auto& ga = a.guards[k];
    const auto& gb = b.guards[k];
    if (ga.rows() != gb.rows() || ga.cols() != gb.cols()) return false;
    for (std::size_t i = 0; i < ga.rows(); ++i) {
      for (std::size_t j = 0; j < ga.cols(); ++j) {
        if (ga(i, j).bits() != gb(i, j).bits()) return false;
      }
    }
  }
  return true;
}

void Fts::validate() const {
  check_unique(states, "state");
  check_unique(actions, "action");
  diagram.check_atoms(features);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& t : transitions) {
    if (t.from >= states.size() || t.to >= states.size() || t.action >= actions.size()) {
      throw ValidationError("transition refers to an undeclared state or action");
    }
    if (!seen.emplace(t.from, t.action, t.to).second) {
      throw ValidationError("transition " + states[t.from] + " -" + actions[t.action] + "-> " +
                            states[t.to] + " is listed twice");
    }
    t.guard.check_atoms(features);
  }
}

std::size_t Fts::state_index(std::string_view name) const {
  return index_in(states, name, "state");
}

Lats cts_to_lats(const Cts& c) {
  Lats l;
  l.states = c.states;
  l.actions = c.actions;
  l.precedence = c.precedence;
  l.poset = c.poset;
  const ConditionPoset& p = *c.poset;
  const std::size_t n = c.states.size();
  l.guards.assign(c.actions.size(), Matrix<LatticeElement>(n, n, LatticeElement::bottom(p)));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < c.actions.size(); ++a) {
      std::vector<Bits> guard(n, Bits(p.size()));
      for (std::size_t phi = 0; phi < p.size(); ++phi) {
        const Bits& succ = c.successors[x][a][phi];
        for (auto y = succ.find_first(); y != Bits::npos; y = succ.find_next(y)) {
          guard[y].set(phi);
        }
      }
      for (std::size_t y = 0; y < n; ++y) {
        l.guards[a](x, y) = LatticeElement::from_bits(p, std::move(guard[y]));
      }
    }
  }
  return l;
}

Cts lats_to_cts(const Lats& l) {
  Cts c = Cts::empty(l.states, l.actions, l.precedence, l.poset);
  const std::size_t n = l.states.size();
  for (std::size_t a = 0; a < l.actions.size(); ++a) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const Bits& g = l.guards[a](x, y).bits();
        for (auto phi = g.find_first(); phi != Bits::npos; phi = g.find_next(phi)) {
          c.successors[x][a][phi].set(y);
        }
      }
    }
  }
  return c;
}

ConfigurationPoset configuration_poset(const FeatureUniverse& u, const FeatureExpr& diagram) {
  if (u.size() > 24) {
    throw CapExceeded("explicit configuration enumeration is limited to 24 features");
  }
  ConfigurationPoset out;
  const Configuration limit = Configuration{1} << u.size();
  for (Configuration c = 0; c < limit; ++c) {
    if (diagram.evaluate(u, c)) out.configurations.push_back(c);
  }
  std::vector<std::string> names;
  names.reserve(out.configurations.size());
  for (Configuration c : out.configurations) names.push_back(u.configuration_name(c));
  const auto& configs = out.configurations;
  out.poset = ConditionPoset::from_order(std::move(names), [&](std::size_t i, std::size_t j) {
    return upgrade_leq(configs[i], configs[j], u);
  });
  return out;
}

namespace {

Lats encode_over(const Fts& f, const ConfigurationPoset& cp, const AlphabetUnion& alphabet,
                 GuardPolicy policy) {
  const ConditionPoset& p = *cp.poset;
  Lats l;
  l.states = f.states;
  l.actions = alphabet.actions;
  l.precedence = alphabet.precedence;
  l.poset = cp.poset;
  const std::size_t n = f.states.size();
  l.guards.assign(l.actions.size(), Matrix<LatticeElement>(n, n, LatticeElement::bottom(p)));
  for (const auto& t : f.transitions) {
    const std::size_t action = static_cast<std::size_t>(
        std::find(l.actions.begin(), l.actions.end(), f.actions[t.action]) - l.actions.begin());
    Bits bits(p.size());
    for (std::size_t i = 0; i < cp.configurations.size(); ++i) {
      if (t.guard.evaluate(f.features, cp.configurations[i])) bits.set(i);
    }
    if (policy == GuardPolicy::kClose) {
      l.guards[action](t.from, t.to) = LatticeElement::closure_of(p, bits);
      continue;
    }
    for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
      const Bits missing = p.below(i) - bits;
      if (missing.any()) {
        throw GuardNotDownwardClosed(
            "guard of " + f.states[t.from] + " -" + f.actions[t.action] + "-> " +
            f.states[t.to] + " is not downward-closed: it holds in " + p.name(i) +
            " but not in " + p.name(missing.find_first()) + " <= " + p.name(i));
      }
    }
    l.guards[action](t.from, t.to) = LatticeElement::from_bits(p, std::move(bits));
  }
  return l;
}

}  // namespace

Lats fts_to_lats(const Fts& f, GuardPolicy policy) {
  f.validate();
  const ConfigurationPoset cp = configuration_poset(f.features, f.diagram);
  const ActionOrder prec = f.precedence.size() ? f.precedence : ActionOrder(f.actions.size());
  return encode_over(f, cp, {f.actions, prec}, policy);
}

std::pair<Lats, Lats> fts_to_lats(const Fts& left, const Fts& right, GuardPolicy policy) {
  left.validate();
  right.validate();
  if (!(left.features == right.features)) {
    throw ModelMismatch("the two featured systems declare different features or upgrade sets");
  }
  const ConfigurationPoset cp = configuration_poset(left.features, left.diagram);
  for (Configuration c = 0, i = 0; c < (Configuration{1} << left.features.size()); ++c) {
    const bool in_left = i < cp.configurations.size() && cp.configurations[i] == c;
    if (in_left) ++i;
    if (in_left != right.diagram.evaluate(right.features, c)) {
      throw ModelMismatch("the two featured systems have different feature diagrams");
    }
  }
  const AlphabetUnion alphabet =
      unite_alphabets(left.actions, left.precedence, right.actions, right.precedence);
  return {encode_over(left, cp, alphabet, policy), encode_over(right, cp, alphabet, policy)};
}

Lts instantiate(const Cts& c, std::size_t phi) {
  if (phi >= c.poset->size()) throw UnknownCondition("condition index out of range");
  Lts out;
  out.states = c.states;
  out.actions = c.actions;
  out.successors.assign(c.states.size(), std::vector<std::vector<std::size_t>>(c.actions.size()));
  for (std::size_t x = 0; x < c.states.size(); ++x) {
    for (std::size_t a = 0; a < c.actions.size(); ++a) {
      const Bits& succ = c.successors[x][a][phi];
      for (auto y = succ.find_first(); y != Bits::npos; y = succ.find_next(y)) {
        out.successors[x][a].push_back(y);
      }
    }
  }
  return out;
}

Lts instantiate(const Cts& c, std::string_view phi) {
  auto i = c.poset->find(phi);
  if (!i) throw UnknownCondition("unknown condition '" + std::string(phi) + "'");
  return instantiate(c, *i);
}

Lts instantiate_prec(const Cts& c, std::size_t phi) {
  Lts out = instantiate(c, phi);
  if (c.precedence.size() == 0) return out;
  for (std::size_t x = 0; x < c.states.size(); ++x) {
    std::vector<bool> suppressed(c.actions.size(), false);
    for (std::size_t a = 0; a < c.actions.size(); ++a) {
      const Bits& higher = c.precedence.greater(a);
      for (auto b = higher.find_first(); b != Bits::npos; b = higher.find_next(b)) {
        if (c.successors[x][b][phi].any()) {
          suppressed[a] = true;
          break;
        }
      }
    }
    for (std::size_t a = 0; a < c.actions.size(); ++a) {
      if (suppressed[a]) out.successors[x][a].clear();
    }
  }
  return out;
}

Lts instantiate_prec(const Cts& c, std::string_view phi) {
  auto i = c.poset->find(phi);
  if (!i) throw UnknownCondition("unknown condition '" + std::string(phi) + "'");
  return instantiate_prec(c, *i);
}

std::pair<Fts, Fts> gen_benchmark(std::size_t n) {
  if (n == 0) throw ValidationError("benchmark size must be positive");
  std::vector<std::string> features;
  for (std::size_t i = 0; i < n; ++i) features.push_back("f" + std::to_string(i));
  auto make = [&](bool relaxed) {
    Fts f;
    f.features = FeatureUniverse(features, features);
    f.actions = {"b", "c"};
    f.precedence = ActionOrder(2);
    f.diagram = FeatureExpr::constant(true);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t base = f.states.size();
      for (int k = 0; k < 3; ++k) {
        f.states.push_back("c" + std::to_string(i) + "." + std::to_string(k));
      }
      const FeatureExpr fi = FeatureExpr::atom(features[i]);
      f.transitions.push_back({base + 0, 0, base + 1, fi});
      f.transitions.push_back({base + 0, 0, base + 0, fi});
      f.transitions.push_back({base + 0, 0, base + 2, relaxed ? FeatureExpr::constant(true) : fi});
      f.transitions.push_back({base + 2, 1, base + 0, fi});
    }
    return f;
  };
  return {make(true), make(false)};
}

std::pair<Lats, Lats> gen_benchmark_lats(std::size_t n) {
  auto [left, right] = gen_benchmark(n);
  return fts_to_lats(left, right);
}

namespace {

// Index map taking the other poset's condition indices to `target`'s.
std::vector<std::size_t> poset_map(const ConditionPoset& target, const ConditionPoset& other) {
  if (target.size() != other.size()) {
    throw ModelMismatch("the two models use different condition sets");
  }
  std::vector<std::size_t> map(other.size());
  for (std::size_t i = 0; i < other.size(); ++i) {
    auto j = target.find(other.name(i));
    if (!j) throw ModelMismatch("condition '" + other.name(i) + "' is missing in the first model");
    map[i] = *j;
  }
  for (std::size_t i = 0; i < other.size(); ++i) {
    for (std::size_t k = 0; k < other.size(); ++k) {
      if (other.leq(i, k) != target.leq(map[i], map[k])) {
        throw ModelMismatch("the two models order their conditions differently");
      }
    }
  }
  return map;
}

Bits remap(const Bits& b, const std::vector<std::size_t>& map) {
  Bits out(b.size());
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.set(map[i]);
  return out;
}

Lats rebase(const Lats& l, const std::vector<std::string>& actions, const ActionOrder& order,
            const PosetPtr& poset, const std::vector<std::size_t>& cond_map) {
  Lats out;
  out.states = l.states;
  out.actions = actions;
  out.precedence = order;
  out.poset = poset;
  const std::size_t n = l.states.size();
  out.guards.assign(actions.size(), Matrix<LatticeElement>(n, n, LatticeElement::bottom(*poset)));
  for (std::size_t a = 0; a < l.actions.size(); ++a) {
    const std::size_t target = index_in(actions, l.actions[a], "action");
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        out.guards[target](x, y) =
            LatticeElement::from_bits(*poset, remap(l.guards[a](x, y).bits(), cond_map));
      }
    }
  }
  return out;
}

}  // namespace

std::pair<Lats, Lats> align(const Lats& left, const Lats& right) {
  const ActionOrder lp = left.precedence.size() ? left.precedence : ActionOrder(left.actions.size());
  const ActionOrder rp =
      right.precedence.size() ? right.precedence : ActionOrder(right.actions.size());
  AlphabetUnion u = unite_alphabets(left.actions, lp, right.actions, rp);
  std::vector<std::size_t> identity(left.poset->size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  const auto right_map = poset_map(*left.poset, *right.poset);
  return {rebase(left, u.actions, u.precedence, left.poset, identity),
          rebase(right, u.actions, u.precedence, left.poset, right_map)};
}

std::pair<Cts, Cts> align(const Cts& left, const Cts& right) {
  auto [l, r] = align(cts_to_lats(left), cts_to_lats(right));
  return {lats_to_cts(l), lats_to_cts(r)};
}

}  // namespace condbisim
