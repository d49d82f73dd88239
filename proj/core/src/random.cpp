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

#include "condbisim/random.hpp"

#include <algorithm>
#include <numeric>

namespace condbisim {
namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

}  // namespace

PosetPtr random_poset(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rank[i] < rank[j] && chance(rng, density)) pairs.emplace_back(names[i], names[j]);
    }
  }
  return ConditionPoset::from_pairs(names, pairs);
}

ActionOrder random_precedence(std::mt19937_64& rng, const std::vector<std::string>& actions) {
  std::vector<std::size_t> rank(actions.size());
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    for (std::size_t j = 0; j < actions.size(); ++j) {
      if (rank[i] < rank[j] && chance(rng, 0.5)) pairs.emplace_back(actions[i], actions[j]);
    }
  }
  return ActionOrder::from_pairs(actions, pairs);
}

Cts random_cts(std::mt19937_64& rng, std::size_t states, const std::vector<std::string>& actions,
               const ActionOrder& precedence, const PosetPtr& poset, double density) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < states; ++i) names.push_back("s" + std::to_string(i));
  Cts c = Cts::empty(names, actions, precedence, poset);
  if (poset->size() == 0) return c;
  for (std::size_t x = 0; x < states; ++x) {
    for (std::size_t a = 0; a < actions.size(); ++a) {
      for (std::size_t y = 0; y < states; ++y) {
        if (chance(rng, density)) c.add(x, a, uniform(rng, 0, poset->size() - 1), y);
      }
    }
  }
  return c;
}

std::pair<Cts, Cts> random_cts_pair(std::mt19937_64& rng, const RandomModelParams& params) {
  const std::size_t nphi = uniform(rng, 1, std::max<std::size_t>(1, params.max_conditions));
  const PosetPtr poset = random_poset(rng, nphi, params.order_density);
  std::vector<std::string> actions;
  const std::size_t na = uniform(rng, 1, std::max<std::size_t>(1, params.max_actions));
  for (std::size_t i = 0; i < na; ++i) actions.push_back(std::string(1, static_cast<char>('a' + i)));
  const ActionOrder prec =
      params.precedence ? random_precedence(rng, actions) : ActionOrder(actions.size());
  const std::size_t nx = uniform(rng, 1, std::max<std::size_t>(1, params.max_states));
  Cts left = random_cts(rng, nx, actions, prec, poset, params.edge_density);
  Cts right;
  if (chance(rng, 0.5)) {
    // Permuted copy with a few edits.
    std::vector<std::size_t> perm(nx);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nx; ++i) names.push_back("t" + std::to_string(i));
    right = Cts::empty(names, actions, prec, poset);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t phi = 0; phi < nphi; ++phi) {
          const Bits& succ = left.successors[x][a][phi];
          for (auto y = succ.find_first(); y != Bits::npos; y = succ.find_next(y)) {
            right.successors[perm[x]][a][phi].set(perm[y]);
          }
        }
      }
    }
    const std::size_t edits = uniform(rng, 0, 2);
    for (std::size_t e = 0; e < edits; ++e) {
      right.add(uniform(rng, 0, nx - 1), uniform(rng, 0, na - 1), uniform(rng, 0, nphi - 1),
                uniform(rng, 0, nx - 1));
    }
  } else {
    const std::size_t ny = uniform(rng, 1, std::max<std::size_t>(1, params.max_states));
    right = random_cts(rng, ny, actions, prec, poset, params.edge_density);
    for (std::size_t i = 0; i < ny; ++i) right.states[i] = "t" + std::to_string(i);
  }
  return {std::move(left), std::move(right)};
}

}  // namespace condbisim
