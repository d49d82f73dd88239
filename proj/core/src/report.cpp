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

#include "condbisim/report.hpp"

#include <algorithm>

#include "condbisim/errors.hpp"
#include "json.hpp"

namespace condbisim {

RelationTable decode(const Matrix<LatticeElement>& r, const Lats& left, const Lats& right) {
  RelationTable t;
  t.conditions = left.poset->names();
  t.left_states = left.states;
  t.right_states = right.states;
  t.entries.reserve(r.rows() * r.cols());
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t y = 0; y < r.cols(); ++y) t.entries.push_back(r(x, y).bits());
  }
  return t;
}

RelationTable decode(const Matrix<bdd::Bdd>& r, const SymbolicPair& pair) {
  RelationTable t;
  t.conditions = pair.conditions().names;
  t.left_states = pair.left.states;
  t.right_states = pair.right.states;
  t.entries.reserve(r.rows() * r.cols());
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t y = 0; y < r.cols(); ++y) t.entries.push_back(pair.decode(r(x, y)));
  }
  return t;
}

PairQuery parse_pair_query(const std::string& text) {
  const auto c1 = text.find(',');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(',', c1 + 1);
  if (c2 == std::string::npos) {
    throw ValidationError("--pair expects 'left,right,condition', got '" + text + "'");
  }
  return {text.substr(0, c1), text.substr(c1 + 1, c2 - c1 - 1), text.substr(c2 + 1)};
}

bool answer(const RelationTable& t, const PairQuery& q) {
  auto find = [](const std::vector<std::string>& v, const std::string& name) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), name) - v.begin());
  };
  const std::size_t x = find(t.left_states, q.left);
  const std::size_t y = find(t.right_states, q.right);
  const std::size_t phi = find(t.conditions, q.condition);
  if (x == t.left_states.size()) throw UnknownElement("unknown left state '" + q.left + "'");
  if (y == t.right_states.size()) throw UnknownElement("unknown right state '" + q.right + "'");
  if (phi == t.conditions.size()) {
    throw UnknownCondition("unknown condition '" + q.condition + "'");
  }
  return t.at(x, y).test(phi);
}

namespace {

nlohmann::ordered_json pairs_json(const RelationTable& t) {
  using nlohmann::ordered_json;
  ordered_json pairs = ordered_json::array();
  for (std::size_t x = 0; x < t.left_states.size(); ++x) {
    for (std::size_t y = 0; y < t.right_states.size(); ++y) {
      ordered_json under = ordered_json::array();
      const Bits& b = t.at(x, y);
      for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) {
        under.push_back(t.conditions[i]);
      }
      ordered_json entry;
      entry["left"] = t.left_states[x];
      entry["right"] = t.right_states[y];
      entry["bisimilar_under"] = std::move(under);
      pairs.push_back(std::move(entry));
    }
  }
  return pairs;
}

}  // namespace

std::string render_report(const RelationTable& t, bool precedence,
                          const std::optional<PairQuery>& query) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["precedence"] = precedence;
  doc["conditions"] = t.conditions;
  doc["pairs"] = pairs_json(t);
  if (query) {
    ordered_json q;
    q["left"] = query->left;
    q["right"] = query->right;
    q["condition"] = query->condition;
    q["bisimilar"] = answer(t, *query);
    doc["query"] = std::move(q);
  }
  return doc.dump(2) + "\n";
}

std::string render_trace(const std::vector<RelationTable>& steps) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["iterations"] = steps.empty() ? 0 : steps.size() - 1;
  ordered_json rel = ordered_json::array();
  for (const auto& t : steps) rel.push_back(pairs_json(t));
  doc["relations"] = std::move(rel);
  return doc.dump(2) + "\n";
}

std::string render_violations(const std::vector<Violation>& v, const Lats& left,
                              const Lats& right) {
  using nlohmann::ordered_json;
  ordered_json out = ordered_json::array();
  for (const auto& e : v) {
    ordered_json item;
    item["left"] = left.states[e.left];
    item["right"] = right.states[e.right];
    item["action"] = left.actions[e.action];
    item["irreducible"] = "down(" + left.poset->name(e.condition) + ")";
    item["direction"] = e.direction == Direction::kLeftToRight ? "left-to-right" : "right-to-left";
    out.push_back(std::move(item));
  }
  return out.dump(2) + "\n";
}

}  // namespace condbisim
