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


#ifndef CONDBISIM_TESTS_FIXTURES_HPP_
#define CONDBISIM_TESTS_FIXTURES_HPP_

#include <string>
#include <utility>

#include "condbisim/lattice.hpp"
#include "condbisim/model_io.hpp"
#include "condbisim/models.hpp"

namespace condbisim::fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(CONDBISIM_DATA_DIR) + "/" + name;
}

// Hasse diagram a < f, b < f, b < e.
inline PosetPtr four_point_poset() {
  return ConditionPoset::from_pairs({"a", "b", "e", "f"}, {{"a", "f"}, {"b", "f"}, {"b", "e"}});
}

inline Cts load_cts(const std::string& name) {
  return std::get<Cts>(load_model(data_path(name)));
}

inline Fts load_fts(const std::string& name) {
  return std::get<Fts>(load_model(data_path(name)));
}

// The routing protocol and its variant with check -> unsafe guarded by a.
inline std::pair<Cts, Cts> routing_pair(bool with_precedence = false) {
  const std::string sfx = with_precedence ? "_prec.json" : ".json";
  return align(load_cts("routing_original" + sfx), load_cts("routing_modified" + sfx));
}

inline std::pair<Lats, Lats> routing_lats(bool with_precedence = false) {
  auto [l, r] = routing_pair(with_precedence);
  return {cts_to_lats(l), cts_to_lats(r)};
}

}  // namespace condbisim::fixtures

#endif  // CONDBISIM_TESTS_FIXTURES_HPP_
