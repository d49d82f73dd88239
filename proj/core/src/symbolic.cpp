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

#include "condbisim/symbolic.hpp"

#include <algorithm>
#include <numeric>

#include "condbisim/errors.hpp"

namespace condbisim {
namespace {

// Some member of ⟦b⟧ (b ≠ 0), preferring features switched off.
Configuration pick_one(const bdd::Manager& m, bdd::Bdd b) {
  Configuration c = 0;
  while (!b.is_terminal()) {
    const bdd::Bdd low = m.low(b);
    if (!low.is_zero()) {
      b = low;
    } else {
      c |= Configuration{1} << m.var_of(b);
      b = m.high(b);
    }
  }
  return c;
}

// All C' ≤ c in the upgrade order.
bdd::Bdd below_cube(bdd::Manager& m, const FeatureUniverse& u, Configuration c) {
  bdd::Bdd cube = m.one();
  for (std::size_t i = u.size(); i-- > 0;) {
    const bool on = (c >> i) & 1U;
    if (u.is_upgrade(i) && !on) continue;
    cube = on ? m.make(i, cube, m.zero()) : m.make(i, m.zero(), cube);
  }
  return cube;
}

GuardedLts<bdd::Bdd> empty_system(bdd::Manager& m, const std::vector<std::string>& states,
                                  const AlphabetUnion& alphabet) {
  GuardedLts<bdd::Bdd> out;
  out.states = states;
  out.actions = alphabet.actions;
  out.precedence = alphabet.precedence;
  out.guards.assign(alphabet.actions.size(),
                    Matrix<bdd::Bdd>(states.size(), states.size(), m.zero()));
  return out;
}

std::size_t action_position(const std::vector<std::string>& actions, const std::string& a) {
  return static_cast<std::size_t>(std::find(actions.begin(), actions.end(), a) - actions.begin());
}

}  // namespace

Configuration remap_configuration(Configuration c, const FeatureUniverse& from,
                                  const FeatureUniverse& to) {
  Configuration out = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if ((c >> i) & 1U) out |= Configuration{1} << to.index_of(from.name(i));
  }
  return out;
}

bdd::SymbolicAlgebra SymbolicPair::algebra() const {
  return bdd::SymbolicAlgebra(*manager, universe, diagram);
}

const SymbolicPair::Conditions& SymbolicPair::conditions() const {
  if (conditions_cache) return *conditions_cache;
  if (universe.size() >= 64) {
    throw CapExceeded("condition enumeration needs fewer than 64 features");
  }
  std::vector<std::pair<Configuration, Configuration>> configs;  // (declared, manager)
  for (Configuration c : manager->satisfying(diagram)) {
    configs.emplace_back(remap_configuration(c, universe, declared), c);
  }
  std::sort(configs.begin(), configs.end());
  auto out = std::make_unique<Conditions>();
  for (const auto& [decl, point] : configs) {
    out->names.push_back(declared.configuration_name(decl));
    out->points.push_back(point);
  }
  conditions_cache = std::move(out);
  return *conditions_cache;
}

Bits SymbolicPair::decode(bdd::Bdd e) const {
  const Conditions& c = conditions();
  Bits out(c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (manager->evaluate(e, c.points[i])) out.set(i);
  }
  return out;
}

SymbolicPair encode_fts(const Fts& left, const Fts& right, GuardPolicy policy,
                        const std::vector<std::string>& var_order) {
  left.validate();
  right.validate();
  if (!(left.features == right.features)) {
    throw ModelMismatch("the two featured systems declare different features or upgrade sets");
  }
  SymbolicPair p;
  p.declared = left.features;
  p.universe = var_order.empty() ? left.features : left.features.reordered(var_order);
  p.manager = std::make_unique<bdd::Manager>(p.universe.size());
  bdd::Manager& m = *p.manager;
  p.diagram = bdd::from_expr(m, p.universe, left.diagram);
  if (!(bdd::from_expr(m, p.universe, right.diagram) == p.diagram)) {
    throw ModelMismatch("the two featured systems have different feature diagrams");
  }
  const AlphabetUnion alphabet =
      unite_alphabets(left.actions, left.precedence, right.actions, right.precedence);
  const bdd::Bdd keep_base = m.apply_not(p.diagram);

  auto encode = [&](const Fts& f) {
    GuardedLts<bdd::Bdd> out = empty_system(m, f.states, alphabet);
    for (const auto& t : f.transitions) {
      bdd::Bdd g = m.apply_and(bdd::from_expr(m, p.universe, t.guard), p.diagram);
      if (!bdd::is_element_of(g, p.diagram, p.universe)) {
        if (policy == GuardPolicy::kClose) {
          g = m.apply_and(m.close_down(g, p.universe), p.diagram);
        } else {
          const bdd::Bdd kept =
              m.apply_and(m.approx(m.apply_or(g, keep_base), p.universe), p.diagram);
          const Configuration c = pick_one(m, m.apply_diff(g, kept));
          const bdd::Bdd lower = m.apply_diff(
              m.apply_and(below_cube(m, p.universe, c), p.diagram), g);
          const Configuration c2 = pick_one(m, lower);
          const auto name = [&](Configuration x) {
            return p.declared.configuration_name(remap_configuration(x, p.universe, p.declared));
          };
          throw GuardNotDownwardClosed("guard of " + f.states[t.from] + " -" +
                                       f.actions[t.action] + "-> " + f.states[t.to] +
                                       " is not downward-closed: it holds in " + name(c) +
                                       " but not in " + name(c2) + " <= " + name(c));
        }
      }
      out.guards[action_position(alphabet.actions, f.actions[t.action])](t.from, t.to) = g;
    }
    return out;
  };
  p.left = encode(left);
  p.right = encode(right);
  return p;
}

SymbolicPair encode_lats(const Lats& left_in, const Lats& right_in,
                         const std::vector<std::string>& var_order) {
  const auto [left, right] = align(left_in, right_in);
  const ConditionPoset& poset = *left.poset;
  if (poset.size() > FeatureUniverse::kMaxFeatures) {
    throw CapExceeded("the symbolic backend encodes at most 64 conditions");
  }
  SymbolicPair p;
  p.declared = FeatureUniverse(poset.names(), poset.names());
  p.universe = var_order.empty() ? p.declared : p.declared.reordered(var_order);
  p.manager = std::make_unique<bdd::Manager>(p.universe.size());
  bdd::Manager& m = *p.manager;

  auto cond = std::make_unique<SymbolicPair::Conditions>();
  std::vector<bdd::Bdd> minterms;
  p.diagram = m.zero();
  for (std::size_t phi = 0; phi < poset.size(); ++phi) {
    Configuration c = 0;
    const Bits& up = poset.above(phi);
    for (auto q = up.find_first(); q != Bits::npos; q = up.find_next(q)) {
      c |= Configuration{1} << p.universe.index_of(poset.name(q));
    }
    cond->names.push_back(poset.name(phi));
    cond->points.push_back(c);
    minterms.push_back(m.minterm(c));
    p.diagram = m.apply_or(p.diagram, minterms.back());
  }
  p.conditions_cache = std::move(cond);

  const AlphabetUnion alphabet{left.actions, left.precedence};
  auto encode = [&](const Lats& l) {
    GuardedLts<bdd::Bdd> out = empty_system(m, l.states, alphabet);
    for (std::size_t a = 0; a < l.num_actions(); ++a) {
      for (std::size_t x = 0; x < l.num_states(); ++x) {
        for (std::size_t y = 0; y < l.num_states(); ++y) {
          const Bits& g = l.guards[a](x, y).bits();
          bdd::Bdd b = m.zero();
          for (auto phi = g.find_first(); phi != Bits::npos; phi = g.find_next(phi)) {
            b = m.apply_or(b, minterms[phi]);
          }
          out.guards[a](x, y) = b;
        }
      }
    }
    return out;
  };
  p.left = encode(left);
  p.right = encode(right);
  return p;
}

}  // namespace condbisim
