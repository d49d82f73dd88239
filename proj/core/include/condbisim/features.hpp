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

#ifndef CONDBISIM_FEATURES_HPP_
#define CONDBISIM_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace condbisim {

/// A configuration C ⊆ N as a bitmask over feature indices.
using Configuration = std::uint64_t;

/// The feature set N in a fixed order (the ROBDD variable order) together
/// with the upgrade features U ⊆ N.
class FeatureUniverse {
 public:
  static constexpr std::size_t kMaxFeatures = 64;

  FeatureUniverse() = default;
  FeatureUniverse(std::vector<std::string> features,
                  const std::vector<std::string>& upgrade);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownFeature.
  std::size_t index_of(std::string_view name) const;

  bool is_upgrade(std::size_t i) const { return (upgrade_ >> i) & 1U; }
  Configuration upgrade_mask() const { return upgrade_; }
  std::vector<std::string> upgrade_names() const;
  /// Every configuration over N (2^|N| of them).
  Configuration all_mask() const;

  /// Same features and upgrade set, variables permuted into `order`.
  FeatureUniverse reordered(const std::vector<std::string>& order) const;

  Configuration configuration(const std::vector<std::string>& features) const;
  /// Canonical name of a configuration: alphabetically sorted features in
  /// braces, e.g. "{enc,ssl}"; the empty configuration is "{}".
  std::string configuration_name(Configuration c) const;

  bool operator==(const FeatureUniverse& other) const {
    return names_ == other.names_ && upgrade_ == other.upgrade_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  Configuration upgrade_ = 0;
};

/// The upgrade order on configurations: C ≤ C' iff C arises from C' by
/// switching on upgrade features.
bool upgrade_leq(Configuration c, Configuration c_prime, const FeatureUniverse& u);

/// A propositional formula over feature names.
class FeatureExpr {
 public:
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kImplies };

  FeatureExpr();  // true

  static FeatureExpr constant(bool value);
  static FeatureExpr atom(std::string name);
  static FeatureExpr negation(FeatureExpr e);
  static FeatureExpr conjunction(FeatureExpr a, FeatureExpr b);
  static FeatureExpr disjunction(FeatureExpr a, FeatureExpr b);
  static FeatureExpr implication(FeatureExpr a, FeatureExpr b);

  Kind kind() const;
  const std::string& name() const;
  const FeatureExpr& lhs() const;
  const FeatureExpr& rhs() const;

  /// Throws UnknownFeature for atoms missing from `u`.
  void check_atoms(const FeatureUniverse& u) const;
  bool evaluate(const FeatureUniverse& u, Configuration c) const;
  std::string to_string() const;

 private:
  struct Node;
  explicit FeatureExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses `expr := atom | true | false | !expr | expr & expr | expr | expr
/// | expr -> expr | (expr)` with precedence ! > & > | > -> and
/// right-associative ->. Throws ParseError.
FeatureExpr parse_feature_expr(std::string_view text);

}  // namespace condbisim

#endif  // CONDBISIM_FEATURES_HPP_
