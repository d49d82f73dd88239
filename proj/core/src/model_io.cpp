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

#include "condbisim/model_io.hpp"

#include <fstream>
#include <sstream>

#include "condbisim/errors.hpp"
#include "json.hpp"

namespace condbisim {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> as_strings(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> as_pairs(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of [lower, higher] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected a [lower, higher] pair");
    out.emplace_back(as_string(j[i][0], p + "[0]"), as_string(j[i][1], p + "[1]"));
  }
  return out;
}

// Runs `fn`, prefixing library errors with `path`.
template <class Fn>
auto at(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::size_t position(const std::vector<std::string>& names, const std::string& name,
                     const std::string& path, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) fail(path, std::string("unknown ") + what + " '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

struct Signature {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  ActionOrder precedence;
};

Signature read_signature(const json& doc) {
  Signature s;
  s.states = as_strings(member(doc, "", "states"), "states");
  s.actions = as_strings(member(doc, "", "alphabet"), "alphabet");
  std::vector<std::pair<std::string, std::string>> pairs;
  if (auto it = doc.find("precedence"); it != doc.end()) pairs = as_pairs(*it, "precedence");
  s.precedence = at("precedence", [&] { return ActionOrder::from_pairs(s.actions, pairs); });
  return s;
}

PosetPtr read_poset(const json& doc) {
  const json& p = member(doc, "", "poset");
  if (!p.is_object()) fail("poset", "expected an object with 'elements' and 'leq'");
  auto elements = as_strings(member(p, "poset", "elements"), "poset.elements");
  std::vector<std::pair<std::string, std::string>> leq;
  if (auto it = p.find("leq"); it != p.end()) leq = as_pairs(*it, "poset.leq");
  return at("poset", [&] { return ConditionPoset::from_pairs(elements, leq); });
}

struct RawTransition {
  std::size_t from;
  std::size_t action;
  std::size_t to;
  const json* guard;
  std::string path;
};

std::vector<RawTransition> read_transitions(const json& doc, const Signature& s) {
  std::vector<RawTransition> out;
  auto it = doc.find("transitions");
  if (it == doc.end()) return out;
  if (!it->is_array()) fail("transitions", "expected a list of transitions");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& t = (*it)[i];
    const std::string p = "transitions[" + std::to_string(i) + "]";
    if (!t.is_object()) fail(p, "expected an object");
    RawTransition r;
    r.path = p;
    r.from = position(s.states, as_string(member(t, p, "from"), p + ".from"), p + ".from",
                      "state");
    r.action = position(s.actions, as_string(member(t, p, "action"), p + ".action"),
                        p + ".action", "action");
    r.to = position(s.states, as_string(member(t, p, "to"), p + ".to"), p + ".to", "state");
    auto g = t.find("guard");
    r.guard = g == t.end() ? nullptr : &*g;
    out.push_back(r);
  }
  return out;
}

Cts read_cts(const json& doc) {
  Signature s = read_signature(doc);
  PosetPtr poset = read_poset(doc);
  Cts c = at("states", [&] {
    return Cts::empty(s.states, s.actions, s.precedence, poset);
  });
  for (const auto& t : read_transitions(doc, s)) {
    const std::string gp = t.path + ".guard";
    if (!t.guard) fail(gp, "missing required field");
    for (const auto& name : as_strings(*t.guard, gp)) {
      auto phi = poset->find(name);
      if (!phi) fail(gp, "unknown condition '" + name + "'");
      c.add(t.from, t.action, *phi, t.to);
    }
  }
  return c;
}

Lats read_lats(const json& doc, GuardPolicy policy) {
  Signature s = read_signature(doc);
  Lats l;
  l.poset = read_poset(doc);
  l.states = at("states", [&] { return Cts::empty(s.states, s.actions, s.precedence, l.poset); })
                 .states;
  l.actions = s.actions;
  l.precedence = s.precedence;
  const std::size_t n = l.states.size();
  l.guards.assign(l.actions.size(),
                  Matrix<LatticeElement>(n, n, LatticeElement::bottom(*l.poset)));
  for (const auto& t : read_transitions(doc, s)) {
    const std::string gp = t.path + ".guard";
    if (!t.guard) fail(gp, "missing required field");
    const auto names = as_strings(*t.guard, gp);
    LatticeElement g = at(gp, [&] {
      return LatticeElement::from_names(*l.poset, names, policy == GuardPolicy::kClose);
    });
    l.guards[t.action](t.from, t.to) = join(l.guards[t.action](t.from, t.to), g);
  }
  return l;
}

Fts read_fts(const json& doc) {
  Signature s = read_signature(doc);
  Fts f;
  auto features = as_strings(member(doc, "", "features"), "features");
  std::vector<std::string> upgrade;
  if (auto it = doc.find("upgrade"); it != doc.end()) upgrade = as_strings(*it, "upgrade");
  f.features = at("upgrade", [&] { return FeatureUniverse(features, upgrade); });
  f.states = s.states;
  f.actions = s.actions;
  f.precedence = s.precedence;
  f.diagram = FeatureExpr::constant(true);
  if (auto it = doc.find("diagram"); it != doc.end()) {
    const std::string text = as_string(*it, "diagram");
    f.diagram = at("diagram", [&] { return parse_feature_expr(text); });
    at("diagram", [&] { f.diagram.check_atoms(f.features); return 0; });
  }
  for (const auto& t : read_transitions(doc, s)) {
    const std::string gp = t.path + ".guard";
    FeatureExpr g = FeatureExpr::constant(true);
    if (t.guard) {
      const std::string text = as_string(*t.guard, gp);
      g = at(gp, [&] { return parse_feature_expr(text); });
      at(gp, [&] { g.check_atoms(f.features); return 0; });
    }
    f.transitions.push_back({t.from, t.action, t.to, g});
  }
  at("transitions", [&] { f.validate(); return 0; });
  return f;
}

json signature_json(std::string_view kind, const std::vector<std::string>& states,
                    const std::vector<std::string>& actions, const ActionOrder& prec) {
  json doc;
  doc["kind"] = kind;
  doc["states"] = states;
  doc["alphabet"] = actions;
  json pairs = json::array();
  if (prec.size() == actions.size()) {
    for (auto [lo, hi] : prec.pairs()) pairs.push_back({actions[lo], actions[hi]});
  }
  if (!pairs.empty()) doc["precedence"] = pairs;
  return doc;
}

json poset_json(const ConditionPoset& p) {
  json leq = json::array();
  for (auto [lo, hi] : p.covers()) leq.push_back({p.name(lo), p.name(hi)});
  return {{"elements", p.names()}, {"leq", leq}};
}

// Maximal members of a downward-closed set.
std::vector<std::string> maxima(const ConditionPoset& p, const Bits& set) {
  std::vector<std::string> out;
  for (auto i = set.find_first(); i != Bits::npos; i = set.find_next(i)) {
    Bits strictly_above = p.above(i);
    strictly_above.reset(i);
    if (!(strictly_above & set).any()) out.push_back(p.name(i));
  }
  return out;
}

json dump_cts(const Cts& c) {
  json doc = signature_json("cts", c.states, c.actions, c.precedence);
  doc["poset"] = poset_json(*c.poset);
  json ts = json::array();
  for (std::size_t x = 0; x < c.states.size(); ++x) {
    for (std::size_t a = 0; a < c.actions.size(); ++a) {
      for (std::size_t y = 0; y < c.states.size(); ++y) {
        Bits enabling(c.poset->size());
        for (std::size_t phi = 0; phi < c.poset->size(); ++phi) {
          if (c.successors[x][a][phi].test(y)) enabling.set(phi);
        }
        if (enabling.none()) continue;
        ts.push_back({{"from", c.states[x]},
                      {"action", c.actions[a]},
                      {"to", c.states[y]},
                      {"guard", maxima(*c.poset, enabling)}});
      }
    }
  }
  doc["transitions"] = ts;
  return doc;
}

json dump_lats(const Lats& l) {
  json doc = signature_json("lats", l.states, l.actions, l.precedence);
  doc["poset"] = poset_json(*l.poset);
  json ts = json::array();
  for (std::size_t x = 0; x < l.states.size(); ++x) {
    for (std::size_t a = 0; a < l.actions.size(); ++a) {
      for (std::size_t y = 0; y < l.states.size(); ++y) {
        const LatticeElement& g = l.guards[a](x, y);
        if (g.empty()) continue;
        ts.push_back({{"from", l.states[x]},
                      {"action", l.actions[a]},
                      {"to", l.states[y]},
                      {"guard", g.names()}});
      }
    }
  }
  doc["transitions"] = ts;
  return doc;
}

json dump_fts(const Fts& f) {
  json doc = signature_json("fts", f.states, f.actions, f.precedence);
  doc["features"] = f.features.names();
  doc["upgrade"] = f.features.upgrade_names();
  doc["diagram"] = f.diagram.to_string();
  json ts = json::array();
  for (const auto& t : f.transitions) {
    ts.push_back({{"from", f.states[t.from]},
                  {"action", f.actions[t.action]},
                  {"to", f.states[t.to]},
                  {"guard", t.guard.to_string()}});
  }
  doc["transitions"] = ts;
  return doc;
}

}  // namespace

ModelKind kind_of(const Model& m) { return static_cast<ModelKind>(m.index()); }

std::string_view kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::kCts:
      return "cts";
    case ModelKind::kLats:
      return "lats";
    case ModelKind::kFts:
      return "fts";
  }
  return "?";
}

ModelKind parse_kind(std::string_view name) {
  if (name == "cts") return ModelKind::kCts;
  if (name == "lats") return ModelKind::kLats;
  if (name == "fts") return ModelKind::kFts;
  throw ValidationError("unknown model kind '" + std::string(name) + "' (expected cts, lats or fts)");
}

Model parse_model(std::string_view text, GuardPolicy policy) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("(document)", "expected a JSON object");
  const std::string kind = as_string(member(doc, "", "kind"), "kind");
  ModelKind k;
  try {
    k = parse_kind(kind);
  } catch (const ValidationError& e) {
    fail("kind", e.what());
  }
  switch (k) {
    case ModelKind::kCts:
      return read_cts(doc);
    case ModelKind::kLats:
      return read_lats(doc, policy);
    case ModelKind::kFts:
      return read_fts(doc);
  }
  fail("kind", "unsupported");
}

Model load_model(const std::string& path, GuardPolicy policy) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str(), policy);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump_model(const Model& m) {
  json doc = std::visit(
      [](const auto& model) -> json {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, Cts>) return dump_cts(model);
        else if constexpr (std::is_same_v<T, Lats>) return dump_lats(model);
        else return dump_fts(model);
      },
      m);
  return doc.dump(2) + "\n";
}

Model convert(const Model& m, ModelKind target, GuardPolicy policy) {
  const ModelKind source = kind_of(m);
  if (source == target) return m;
  if (target == ModelKind::kFts) {
    throw ValidationError("conversion from " + std::string(kind_name(source)) +
                          " to fts is not defined");
  }
  switch (source) {
    case ModelKind::kCts:
      return cts_to_lats(std::get<Cts>(m));
    case ModelKind::kLats:
      return lats_to_cts(std::get<Lats>(m));
    case ModelKind::kFts: {
      Lats l = fts_to_lats(std::get<Fts>(m), policy);
      if (target == ModelKind::kLats) return l;
      return lats_to_cts(l);
    }
  }
  throw ValidationError("unsupported conversion");
}

}  // namespace condbisim
