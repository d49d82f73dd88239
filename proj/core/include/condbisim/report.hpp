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

#ifndef CONDBISIM_REPORT_HPP_
#define CONDBISIM_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "condbisim/bdd.hpp"
#include "condbisim/bisim.hpp"
#include "condbisim/lattice.hpp"
#include "condbisim/symbolic.hpp"

namespace condbisim {

/// A conditional relation decoded to condition names, independent of the
/// backend that computed it.
struct RelationTable {
  std::vector<std::string> conditions;
  std::vector<std::string> left_states;
  std::vector<std::string> right_states;
  std::vector<Bits> entries;  // row-major, one bit per condition

  const Bits& at(std::size_t x, std::size_t y) const {
    return entries[x * right_states.size() + y];
  }
  friend bool operator==(const RelationTable&, const RelationTable&) = default;
};

RelationTable decode(const Matrix<LatticeElement>& r, const Lats& left, const Lats& right);
RelationTable decode(const Matrix<bdd::Bdd>& r, const SymbolicPair& pair);

struct PairQuery {
  std::string left;
  std::string right;
  std::string condition;
};

/// Parses "x,y,φ". Condition names may themselves contain commas (as in
/// "{a,b}"), so the first two commas separate the fields.
PairQuery parse_pair_query(const std::string& text);

/// Throws UnknownElement / UnknownCondition for names not in the table.
bool answer(const RelationTable& t, const PairQuery& q);

/// The JSON result report:
/// {"precedence": ..., "conditions": [...],
///  "pairs": [{"left", "right", "bisimilar_under": [...]}, ...],
///  "query": {"left", "right", "condition", "bisimilar"}}.
std::string render_report(const RelationTable& t, bool precedence,
                          const std::optional<PairQuery>& query = std::nullopt);

/// The fixpoint trace R_0, R_1, ... as {"iterations", "relations": [[...]]}
/// with each relation listed like the report's "pairs".
std::string render_trace(const std::vector<RelationTable>& steps);

std::string render_violations(const std::vector<Violation>& v, const Lats& left,
                              const Lats& right);

}  // namespace condbisim

#endif  // CONDBISIM_REPORT_HPP_
