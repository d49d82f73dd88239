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

#include "condbisim/commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "condbisim/bdd.hpp"
#include "condbisim/bench.hpp"
#include "condbisim/bisim.hpp"
#include "condbisim/errors.hpp"
#include "condbisim/game.hpp"
#include "condbisim/model_io.hpp"
#include "condbisim/random.hpp"
#include "condbisim/report.hpp"
#include "condbisim/symbolic.hpp"
#include "json.hpp"

namespace condbisim {
namespace {

GuardPolicy policy_of(const RunConfig& cfg) {
  return cfg.close ? GuardPolicy::kClose : GuardPolicy::kReject;
}

std::pair<Model, Model> load_pair(const RunConfig& cfg) {
  if (cfg.inputs.empty() || cfg.inputs.size() > 2) {
    throw ValidationError(cfg.command + " expects one or two model files");
  }
  Model a = load_model(cfg.inputs[0], policy_of(cfg));
  Model b = cfg.inputs.size() == 2 ? load_model(cfg.inputs[1], policy_of(cfg)) : a;
  return {std::move(a), std::move(b)};
}

bool featured(const Model& m) { return kind_of(m) == ModelKind::kFts; }

void require_same_family(const Model& a, const Model& b) {
  if (featured(a) != featured(b)) {
    throw ModelMismatch("cannot compare a featured system with a condition-poset system");
  }
}

Lats as_lats(const Model& m, GuardPolicy policy) {
  return std::get<Lats>(convert(m, ModelKind::kLats, policy));
}

std::pair<Lats, Lats> lats_pair(const Model& a, const Model& b, GuardPolicy policy) {
  require_same_family(a, b);
  if (featured(a)) return fts_to_lats(std::get<Fts>(a), std::get<Fts>(b), policy);
  return align(as_lats(a, policy), as_lats(b, policy));
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (!cfg.out) {
    out << text;
    return;
  }
  std::ofstream file(*cfg.out);
  if (!file) throw Error("cannot write '" + *cfg.out + "'");
  file << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

int query_status(const RelationTable& t, const std::optional<PairQuery>& q) {
  if (!q) return 0;
  return answer(t, *q) ? 0 : 1;
}

}  // namespace

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto [a, b] = load_pair(cfg);
  require_same_family(a, b);
  BisimOptions opts;
  opts.precedence = cfg.precedence;
  std::optional<PairQuery> query;
  if (cfg.pair) query = parse_pair_query(*cfg.pair);

  RelationTable table;
  std::size_t iterations = 0;
  if (cfg.backend == Backend::kExplicit) {
    const auto [l, r] = lats_pair(a, b, policy_of(cfg));
    opts.keep_trace = cfg.trace.has_value();
    const auto res = greatest_bisimulation(l, r, opts);
    iterations = res.trace.iterations;
    table = decode(res.relation, l, r);
    if (cfg.trace) {
      std::vector<RelationTable> steps;
      for (const auto& m : res.trace.relations) steps.push_back(decode(m, l, r));
      write_file(*cfg.trace, render_trace(steps));
    }
  } else {
    if (cfg.trace) throw ValidationError("--trace is only available with the explicit backend");
    SymbolicPair p = featured(a) ? encode_fts(std::get<Fts>(a), std::get<Fts>(b), policy_of(cfg),
                                              cfg.var_order)
                                 : encode_lats(as_lats(a, policy_of(cfg)),
                                               as_lats(b, policy_of(cfg)), cfg.var_order);
    opts.keep_trace = false;
    const auto res = greatest_bisimulation(p.algebra(), p.left, p.right, opts);
    iterations = res.trace.iterations;
    table = decode(res.relation, p);
  }
  err << "iterations: " << iterations << '\n';
  emit(cfg, render_report(table, cfg.precedence, query), out);
  return query_status(table, query);
}

int cmd_convert(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.inputs.size() != 1) throw ValidationError("convert expects exactly one model file");
  const Model m = load_model(cfg.inputs[0], policy_of(cfg));
  emit(cfg, dump_model(convert(m, parse_kind(cfg.to), policy_of(cfg))), out);
  return 0;
}

int cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.features.empty()) throw ValidationError("approx needs --features");
  const std::vector<std::string> upgrade = cfg.upgrade ? *cfg.upgrade : cfg.features;
  FeatureUniverse u(cfg.features, upgrade);
  if (!cfg.var_order.empty()) u = u.reordered(cfg.var_order);
  const FeatureExpr e = parse_feature_expr(cfg.formula);
  bdd::Manager m(u.size());
  const bdd::Bdd in = bdd::from_expr(m, u, e);
  const bdd::Bdd approx = m.approx(in, u);

  using nlohmann::ordered_json;
  auto describe = [&](bdd::Bdd b) {
    ordered_json j;
    j["inner_nodes"] = m.inner_node_count(b);
    j["downward_closed"] = m.is_downward_closed(b, u);
    if (u.size() <= 16) {
      ordered_json configs = ordered_json::array();
      for (Configuration c : m.satisfying(b)) configs.push_back(u.configuration_name(c));
      j["configurations"] = std::move(configs);
    }
    return j;
  };
  ordered_json doc;
  doc["features"] = u.names();
  doc["upgrade"] = u.upgrade_names();
  doc["formula"] = e.to_string();
  doc["input"] = describe(in);
  doc["output"] = describe(approx);
  const std::string in_dot = m.to_dot(in, u, "input");
  const std::string out_dot = m.to_dot(approx, u, "approximation");
  doc["input_dot"] = in_dot;
  doc["output_dot"] = out_dot;
  if (cfg.dot_prefix) {
    write_file(*cfg.dot_prefix + ".input.dot", in_dot);
    write_file(*cfg.dot_prefix + ".output.dot", out_dot);
  }
  emit(cfg, doc.dump(2) + "\n", out);
  return 0;
}

int cmd_game(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream&) {
  if (cfg.precedence) {
    throw ValidationError("the bisimulation game is defined without action precedence");
  }
  const auto [a, b] = load_pair(cfg);
  const auto [l, r] = lats_pair(a, b, policy_of(cfg));
  const GameArena arena(l, r);
  const PairQuery q = parse_pair_query(cfg.start);
  const GameInstance start = arena.instance(q.left, q.right, q.condition);
  std::ostringstream text;
  if (cfg.human) {
    if (*cfg.human != 1 && *cfg.human != 2) throw ValidationError("--human must be 1 or 2");
    const Transcript t =
        interactive_play(arena, start, *cfg.human == 1 ? Player::kOne : Player::kTwo, in, out);
    if (cfg.out) {
      for (const auto& line : t.lines) text << line << '\n';
      write_file(*cfg.out, text.str());
    }
    return 0;
  }
  const Verdict v = self_play(arena, start);
  for (const auto& line : v.transcript) text << line << '\n';
  text << "verdict: " << (v.winner == Player::kOne ? "Player 1" : "Player 2") << " wins after "
       << v.rounds << " round(s)\n";
  emit(cfg, text.str(), out);
  return 0;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.random > 0) {
    std::mt19937_64 rng(cfg.seed);
    RandomModelParams params;
    params.precedence = cfg.precedence;
    std::size_t mismatches = 0;
    nlohmann::ordered_json first;
    for (std::size_t i = 0; i < cfg.random; ++i) {
      const auto [c1, c2] = random_cts_pair(rng, params);
      const Lats l = cts_to_lats(c1);
      Lats r = cts_to_lats(c2);
      BisimOptions opts;
      opts.precedence = cfg.precedence;
      opts.keep_trace = false;
      const auto fix = greatest_bisimulation(l, r, opts).relation;
      const auto brute = brute_force_oracle(c1, c2, cfg.precedence, cfg.cap);
      if (!(decode(fix, l, r) == decode(brute, l, r))) {
        if (mismatches++ == 0) {
          first["instance"] = i;
          first["left"] = nlohmann::json::parse(dump_model(c1));
          first["right"] = nlohmann::json::parse(dump_model(c2));
        }
      }
    }
    nlohmann::ordered_json doc;
    doc["instances"] = cfg.random;
    doc["seed"] = cfg.seed;
    doc["precedence"] = cfg.precedence;
    doc["mismatches"] = mismatches;
    if (mismatches) doc["first_mismatch"] = first;
    emit(cfg, doc.dump(2) + "\n", out);
    err << "random sweep: " << cfg.random << " instances, " << mismatches << " mismatches\n";
    return mismatches == 0 ? 0 : 1;
  }
  const auto [a, b] = load_pair(cfg);
  const auto [l, r] = lats_pair(a, b, policy_of(cfg));
  const auto rel = brute_force_oracle(lats_to_cts(l), lats_to_cts(r), cfg.precedence, cfg.cap);
  std::optional<PairQuery> query;
  if (cfg.pair) query = parse_pair_query(*cfg.pair);
  const RelationTable table = decode(rel, l, r);
  emit(cfg, render_report(table, cfg.precedence, query), out);
  return query_status(table, query);
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n_min == 0 || cfg.n_min > cfg.n_max) throw ValidationError("invalid benchmark range");
  BenchOptions opts;
  opts.n_min = cfg.n_min;
  opts.n_max = cfg.n_max;
  opts.budget = std::chrono::milliseconds(cfg.budget_ms);
  opts.runs = cfg.runs;
  opts.seed = cfg.seed;
  opts.progress = [&err](const std::string& line) { err << line << '\n' << std::flush; };
  const BenchReport report = run_bench(opts);
  out << report.to_table();
  if (cfg.out) write_file(*cfg.out, report.to_json());
  for (const auto& row : report.rows) {
    if (row.agree && !*row.agree) {
      err << "backends disagree at n=" << row.n << '\n';
      return 1;
    }
  }
  return 0;
}

int run_command(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "check") return cmd_check(cfg, out, err);
    if (cfg.command == "convert") return cmd_convert(cfg, out, err);
    if (cfg.command == "approx") return cmd_approx(cfg, out, err);
    if (cfg.command == "game") return cmd_game(cfg, in, out, err);
    if (cfg.command == "oracle") return cmd_oracle(cfg, out, err);
    if (cfg.command == "bench") return cmd_bench(cfg, out, err);
    err << "error: unknown command '" << cfg.command << "'\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace condbisim
