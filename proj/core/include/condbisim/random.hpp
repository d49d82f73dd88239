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

#ifndef CONDBISIM_RANDOM_HPP_
#define CONDBISIM_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <utility>

#include "condbisim/lattice.hpp"
#include "condbisim/models.hpp"

namespace condbisim {

struct RandomModelParams {
  std::size_t max_states = 6;
  std::size_t max_actions = 3;
  std::size_t max_conditions = 5;
  double edge_density = 0.25;   // chance of each (x, a, y) being present
  double order_density = 0.4;   // chance of each candidate poset edge
  bool precedence = false;      // draw a random action precedence order
};

/// A random partial order on `n` conditions named c0, c1, ...
PosetPtr random_poset(std::mt19937_64& rng, std::size_t n, double density);

/// A random strict order on the actions.
ActionOrder random_precedence(std::mt19937_64& rng, const std::vector<std::string>& actions);

/// A random CTS over the given signature; each present transition gets a
/// random maximal condition and is closed downwards.
Cts random_cts(std::mt19937_64& rng, std::size_t states, const std::vector<std::string>& actions,
               const ActionOrder& precedence, const PosetPtr& poset, double density);

/// Two random CTSs sharing poset, alphabet and precedence. Half of the time
/// the second is a lightly mutated copy of the first (renamed states), so
/// that bisimilar pairs are common.
std::pair<Cts, Cts> random_cts_pair(std::mt19937_64& rng, const RandomModelParams& params);

}  // namespace condbisim

#endif  // CONDBISIM_RANDOM_HPP_
