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

#include "condbisim/features.hpp"

#include <algorithm>
#include <cctype>

#include "condbisim/errors.hpp"

namespace condbisim {

FeatureUniverse::FeatureUniverse(std::vector<std::string> features,
                                 const std::vector<std::string>& upgrade)
    : names_(std::move(features)) {
  if (names_.size() > kMaxFeatures) {
    throw ValidationError("at most 64 features are supported");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw ValidationError("feature names must be non-empty");
    if (!index_.emplace(names_[i], i).second) {
      throw ValidationError("duplicate feature '" + names_[i] + "'");
    }
  }
  for (const auto& u : upgrade) upgrade_ |= Configuration{1} << index_of(u);
}

std::optional<std::size_t> FeatureUniverse::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FeatureUniverse::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownFeature("unknown feature '" + std::string(name) + "'");
}

std::vector<std::string> FeatureUniverse::upgrade_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (is_upgrade(i)) out.push_back(names_[i]);
  }
  return out;
}

Configuration FeatureUniverse::all_mask() const {
  return size() == 64 ? ~Configuration{0} : (Configuration{1} << size()) - 1;
}

FeatureUniverse FeatureUniverse::reordered(const std::vector<std::string>& order) const {
  if (order.size() != size()) {
    throw ValidationError("variable order must list every feature exactly once");
  }
  for (const auto& f : order) index_of(f);
  FeatureUniverse out(order, upgrade_names());
  return out;
}

Configuration FeatureUniverse::configuration(const std::vector<std::string>& features) const {
  Configuration c = 0;
  for (const auto& f : features) c |= Configuration{1} << index_of(f);
  return c;
}

std::string FeatureUniverse::configuration_name(Configuration c) const {
  std::vector<std::string> on;
  for (std::size_t i = 0; i < size(); ++i) {
    if ((c >> i) & 1U) on.push_back(names_[i]);
  }
  std::sort(on.begin(), on.end());
  std::string out = "{";
  for (std::size_t i = 0; i < on.size(); ++i) {
    if (i) out += ',';
    out += on[i];
  }
  return out + "}";
}

bool upgrade_leq(Configuration c, Configuration c_prime, const FeatureUniverse& u) {
  const Configuration up = u.upgrade_mask();
  const Configuration fixed = u.all_mask() & ~up;
  if ((c & fixed) != (c_prime & fixed)) return false;
  return (c_prime & up & ~c) == 0;
}

struct FeatureExpr::Node {
  Kind kind;
  std::string name;
  FeatureExpr lhs;
  FeatureExpr rhs;
};

FeatureExpr::FeatureExpr()
    : node_(std::make_shared<const Node>(Node{Kind::kTrue, {}, FeatureExpr(nullptr), FeatureExpr(nullptr)})) {}

FeatureExpr FeatureExpr::constant(bool value) {
  return FeatureExpr(std::make_shared<const Node>(
      Node{value ? Kind::kTrue : Kind::kFalse, {}, FeatureExpr(nullptr), FeatureExpr(nullptr)}));
}

FeatureExpr FeatureExpr::atom(std::string name) {
  return FeatureExpr(std::make_shared<const Node>(
      Node{Kind::kAtom, std::move(name), FeatureExpr(nullptr), FeatureExpr(nullptr)}));
}

FeatureExpr FeatureExpr::negation(FeatureExpr e) {
  return FeatureExpr(std::make_shared<const Node>(
      Node{Kind::kNot, {}, std::move(e), FeatureExpr(nullptr)}));
}

FeatureExpr FeatureExpr::conjunction(FeatureExpr a, FeatureExpr b) {
  return FeatureExpr(std::make_shared<const Node>(Node{Kind::kAnd, {}, std::move(a), std::move(b)}));
}

FeatureExpr FeatureExpr::disjunction(FeatureExpr a, FeatureExpr b) {
  return FeatureExpr(std::make_shared<const Node>(Node{Kind::kOr, {}, std::move(a), std::move(b)}));
}

FeatureExpr FeatureExpr::implication(FeatureExpr a, FeatureExpr b) {
  return FeatureExpr(
      std::make_shared<const Node>(Node{Kind::kImplies, {}, std::move(a), std::move(b)}));
}

FeatureExpr::Kind FeatureExpr::kind() const { return node_->kind; }
const std::string& FeatureExpr::name() const { return node_->name; }
const FeatureExpr& FeatureExpr::lhs() const { return node_->lhs; }
const FeatureExpr& FeatureExpr::rhs() const { return node_->rhs; }

void FeatureExpr::check_atoms(const FeatureUniverse& u) const {
  switch (kind()) {
    case Kind::kTrue:
    case Kind::kFalse:
      return;
    case Kind::kAtom:
      u.index_of(name());
      return;
    case Kind::kNot:
      lhs().check_atoms(u);
      return;
    default:
      lhs().check_atoms(u);
      rhs().check_atoms(u);
  }
}

bool FeatureExpr::evaluate(const FeatureUniverse& u, Configuration c) const {
  switch (kind()) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kAtom:
      return (c >> u.index_of(name())) & 1U;
    case Kind::kNot:
      return !lhs().evaluate(u, c);
    case Kind::kAnd:
      return lhs().evaluate(u, c) && rhs().evaluate(u, c);
    case Kind::kOr:
      return lhs().evaluate(u, c) || rhs().evaluate(u, c);
    case Kind::kImplies:
      return !lhs().evaluate(u, c) || rhs().evaluate(u, c);
  }
  return false;
}

std::string FeatureExpr::to_string() const {
  switch (kind()) {
    case Kind::kTrue:
      return "true";
    case Kind::kFalse:
      return "false";
    case Kind::kAtom:
      return name();
    case Kind::kNot:
      return "!" + lhs().to_string();
    case Kind::kAnd:
      return "(" + lhs().to_string() + " & " + rhs().to_string() + ")";
    case Kind::kOr:
      return "(" + lhs().to_string() + " | " + rhs().to_string() + ")";
    case Kind::kImplies:
      return "(" + lhs().to_string() + " -> " + rhs().to_string() + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FeatureExpr parse() {
    FeatureExpr e = implication();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  FeatureExpr implication() {
    FeatureExpr lhs = disjunction();
    if (accept("->")) return FeatureExpr::implication(std::move(lhs), implication());
    return lhs;
  }

  FeatureExpr disjunction() {
    FeatureExpr e = conjunction();
    while (peek() == '|') {
      ++pos_;
      e = FeatureExpr::disjunction(std::move(e), conjunction());
    }
    return e;
  }

  FeatureExpr conjunction() {
    FeatureExpr e = unary();
    while (peek() == '&') {
      ++pos_;
      e = FeatureExpr::conjunction(std::move(e), unary());
    }
    return e;
  }

  FeatureExpr unary() {
    const char c = peek();
    if (c == '!') {
      ++pos_;
      return FeatureExpr::negation(unary());
    }
    if (c == '(') {
      ++pos_;
      FeatureExpr e = implication();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
    if (start == pos_) fail(c == '\0' ? "unexpected end of expression" : "expected a feature name");
    std::string word(text_.substr(start, pos_ - start));
    if (word == "true") return FeatureExpr::constant(true);
    if (word == "false") return FeatureExpr::constant(false);
    return FeatureExpr::atom(std::move(word));
  }

  static bool is_ident(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("feature expression '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FeatureExpr parse_feature_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace condbisim
