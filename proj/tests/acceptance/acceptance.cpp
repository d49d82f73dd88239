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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "condbisim/bdd.hpp"
#include "condbisim/bench.hpp"
#include "condbisim/bisim.hpp"
#include "condbisim/commands.hpp"
#include "condbisim/features.hpp"
#include "condbisim/game.hpp"
#include "condbisim/lattice.hpp"
#include "condbisim/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace condbisim {
namespace {

using M = Matrix<LatticeElement>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later ones are dropped.
struct Check {
  Outcome out;
  void expect(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
  bool ok() const { return out.pass; }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const GuardedLts<LatticeElement>& base(const Lats& l) { return l; }

LatticeElement random_element(std::mt19937_64& rng, const ConditionPoset& p) {
  Bits b(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) b[i] = rng() & 1U;
  return approximate(BoolElement(p, b));
}

M random_matrix(std::mt19937_64& rng, const ConditionPoset& p, std::size_t rows,
                std::size_t cols) {
  M m(rows, cols, LatticeElement::bottom(p));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_element(rng, p);
  }
  return m;
}

std::pair<Lats, Lats> random_lats_pair(std::mt19937_64& rng, RandomModelParams params = {}) {
  auto [l, r] = random_cts_pair(rng, params);
  auto [al, ar] = align(l, r);
  return {cts_to_lats(al), cts_to_lats(ar)};
}

// Guards re-expressed over the discrete order on the same condition names.
Lats rebase_discrete(Lats m, const PosetPtr& d) {
  for (auto& g : m.guards) {
    for (std::size_t x = 0; x < g.rows(); ++x) {
      for (std::size_t y = 0; y < g.cols(); ++y) {
        g(x, y) = LatticeElement::from_bits(*d, g(x, y).bits());
      }
    }
  }
  m.poset = d;
  return m;
}

std::vector<std::string> feature_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("f" + std::to_string(i));
  return out;
}

std::vector<std::string> masked(Configuration mask, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if ((mask >> i) & 1U) out.push_back(names[i]);
  }
  return out;
}

std::vector<bool> table_of(const bdd::Manager& m, bdd::Bdd b) {
  std::vector<bool> tt(std::size_t{1} << m.num_vars());
  for (Configuration c = 0; c < tt.size(); ++c) tt[c] = m.evaluate(b, c);
  return tt;
}

bdd::Bdd from_table(bdd::Manager& m, const std::vector<bool>& tt) {
  bdd::Bdd acc = m.zero();
  for (Configuration c = 0; c < tt.size(); ++c) {
    if (tt[c]) acc = m.apply_or(acc, m.minterm(c));
  }
  return acc;
}

// 1. Routing verdicts through the check command.
Outcome routing_verdicts() {
  Check c;
  const auto t0 = Clock::now();
  auto query = [](const std::string& cond) {
    RunConfig cfg;
    cfg.command = "check";
    cfg.inputs = {fixtures::data_path("routing_original.json"),
                  fixtures::data_path("routing_modified.json")};
    cfg.pair = "ready1,ready2," + cond;
    std::ostringstream out, err;
    return cmd_check(cfg, out, err);
  };
  const int a = query("a");
  const int b = query("b");
  const double secs = seconds_since(t0);
  c.expect(a == 0, "ready1,ready2 not bisimilar under a");
  c.expect(b == 1, "ready1,ready2 bisimilar under b");
  c.expect(secs < 1.0, "took " + std::to_string(secs) + " s");
  if (c.ok()) c.out.detail = "a: bisimilar, b: not bisimilar, " + std::to_string(secs) + " s";
  return c.out;
}

// 2. Fixpoint against the definition-level oracle on random pairs.
Outcome oracle_equivalence() {
  Check c;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t instances = 0, mismatches = 0;
  for (int i = 0; i < 300; ++i) {
    RandomModelParams params;
    params.precedence = i % 2 == 1;
    auto [cl, cr] = random_cts_pair(rng, params);
    const auto [l, r] = align(cl, cr);
    const M o = brute_force_oracle(l, r, params.precedence);
    const auto ref = oracle::conditional_bisim(l, r, params.precedence);
    BisimOptions opts;
    opts.precedence = params.precedence;
    const M g = greatest_bisimulation(cts_to_lats(l), cts_to_lats(r), opts).relation;
    bool same = true;
    for (std::size_t x = 0; x < l.states.size(); ++x) {
      for (std::size_t y = 0; y < r.states.size(); ++y) {
        same = same && g(x, y) == o(x, y) && oracle::to_set(o(x, y).bits()) == ref[x][y];
      }
    }
    ++instances;
    mismatches += !same;
  }
  const double secs = seconds_since(t0);
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatching pairs");
  c.expect(secs < 300.0, "took " + std::to_string(secs) + " s");
  if (c.ok()) {
    c.out.detail = std::to_string(instances) + " pairs (half with precedence), 0 mismatches, " +
                   std::to_string(secs) + " s";
  }
  return c.out;
}

// 3. Lattice identities, adjunction and the non-distributivity witness.
Outcome lattice_suite() {
  Check c;
  std::mt19937_64 rng(3);
  std::size_t posets = 0;
  for (int k = 0; k < 40 && c.ok(); ++k) {
    const std::size_t n = 1 + k % 5;
    auto p = random_poset(rng, n, 0.5);
    const auto o = oracle::order_of(*p);
    const auto ds = oracle::downsets(o);
    const oracle::Set all = oracle::Set{1} << n;
    for (oracle::Set b = 0; b < all; ++b) {
      const auto ab = approximate(BoolElement(*p, oracle::to_bits(b, n)));
      c.expect(oracle::to_set(ab.bits()) == oracle::approx(o, b), "approximation");
      for (oracle::Set d = 0; d < all; ++d) {
        const auto ad = approximate(BoolElement(*p, oracle::to_bits(d, n)));
        c.expect(approximate(BoolElement(*p, oracle::to_bits(b & d, n))) == meet(ab, ad),
                 "approximation of a meet");
        if ((b & ~d) == 0) c.expect(leq(ab, ad), "approximation monotone");
      }
    }
    for (oracle::Set ls : ds) {
      const auto l = LatticeElement::from_bits(*p, oracle::to_bits(ls, n));
      for (oracle::Set ms : ds) {
        const auto m = LatticeElement::from_bits(*p, oracle::to_bits(ms, n));
        const auto r = residuum(l, m);
        c.expect(oracle::to_set(r.bits()) == oracle::residuum(o, ls, ms), "residuum");
        c.expect(approximate(join_bool(l.as_bool(), complement_bool(m.as_bool()))) ==
                     residuum(m, l),
                 "approximated join with complement");
        for (oracle::Set ns : ds) {
          const auto kk = LatticeElement::from_bits(*p, oracle::to_bits(ns, n));
          c.expect(leq(meet(l, kk), m) == leq(kk, r), "adjunction");
        }
      }
    }
    ++posets;
  }
  auto p = fixtures::four_point_poset();
  auto subset = [&](std::vector<std::string> names) {
    Bits b(p->size());
    for (const auto& nm : names) b.set(p->index_of(nm));
    return BoolElement(*p, b);
  };
  const auto l = subset({"a", "e"});
  const auto m = subset({"b", "f"});
  const auto lhs = approximate(join_bool(l, m));
  const auto rhs = join(approximate(l), approximate(m));
  c.expect(lhs.is_top() && oracle::to_set(rhs.bits()) ==
                               oracle::to_set(subset({"a", "b"}).bits()),
           "non-distributivity witness");
  if (c.ok()) {
    c.out.detail = std::to_string(posets) +
                   " random posets exhaustively; witness: {a,b,e,f} vs {a,b}";
  }
  return c.out;
}

// 4. BDD canonicity, approximation, residuum and the four-feature example.
Outcome bdd_correctness() {
  Check c;
  std::mt19937_64 rng(4);
  std::size_t comparisons = 0, corpus = 0, residua = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto names = feature_names(n);
    const FeatureUniverse u(names, {});
    bdd::Manager m(n);
    for (int i = 0; i < 200; ++i) {
      const auto e1 = oracle::random_expr(rng, names, 3);
      const auto e2 = oracle::random_expr(rng, names, 3);
      const bool same = oracle::truth_table(e1, names) == oracle::truth_table(e2, names);
      c.expect(same == (bdd::from_expr(m, u, e1) == bdd::from_expr(m, u, e2)), "canonicity");
      ++comparisons;
    }
    // Every function of ≤ 3 variables, built two ways.
    if (n <= 3) {
      const std::size_t rows = std::size_t{1} << n;
      for (std::uint64_t f = 0; f < (std::uint64_t{1} << rows); ++f) {
        std::vector<bool> tt(rows);
        for (std::size_t r = 0; r < rows; ++r) tt[r] = (f >> r) & 1U;
        bdd::Bdd fwd = from_table(m, tt);
        bdd::Bdd rev = m.zero();
        for (std::size_t r = rows; r-- > 0;) {
          if (tt[r]) rev = m.apply_or(m.minterm(r), rev);
        }
        c.expect(fwd == rev && table_of(m, fwd) == tt, "enumerated canonicity");
        ++comparisons;
      }
    }
  }
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto names = feature_names(n);
    bdd::Manager m(n);
    for (Configuration up = 0; up < (Configuration{1} << n); ++up) {
      const FeatureUniverse u(names, masked(up, names));
      for (int i = 0; i < 12; ++i) {
        const auto e = oracle::random_expr(rng, names, 4);
        const auto a = bdd::approx_bdd(bdd::from_expr(m, u, e), u);
        c.expect(table_of(m, a) == oracle::approx_configs(oracle::truth_table(e, names), up, n),
                 "approximation corpus");
        ++corpus;
      }
    }
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto names = feature_names(n);
    bdd::Manager m(n);
    for (int trial = 0; trial < 24; ++trial) {
      const Configuration up =
          std::uniform_int_distribution<Configuration>(0, (Configuration{1} << n) - 1)(rng);
      const FeatureUniverse u(names, masked(up, names));
      const auto dt = oracle::truth_table(oracle::random_expr(rng, names, 3), names);
      std::vector<Configuration> configs;
      for (Configuration k = 0; k < dt.size(); ++k) {
        if (dt[k]) configs.push_back(k);
      }
      std::vector<std::string> cnames;
      for (auto k : configs) cnames.push_back(std::to_string(k));
      auto poset = ConditionPoset::from_order(cnames, [&](std::size_t i, std::size_t j) {
        return oracle::config_leq(configs[i], configs[j], up, n);
      });
      const auto order = oracle::order_of(*poset);
      const std::size_t k = configs.size();
      auto to_bdd = [&](oracle::Set s) {
        std::vector<bool> tt(dt.size());
        for (std::size_t i = 0; i < k; ++i) tt[configs[i]] = (s >> i) & 1U;
        return from_table(m, tt);
      };
      const bdd::Bdd d = from_table(m, dt);
      for (int i = 0; i < 40; ++i) {
        auto draw = [&] {
          return oracle::approx(order, std::uniform_int_distribution<oracle::Set>(
                                           0, (oracle::Set{1} << k) - 1)(rng));
        };
        const oracle::Set l = draw();
        const oracle::Set r = draw();
        const auto expect = residuum(LatticeElement::from_bits(*poset, oracle::to_bits(l, k)),
                                     LatticeElement::from_bits(*poset, oracle::to_bits(r, k)));
        c.expect(bdd::residuum_bdd(to_bdd(l), to_bdd(r), d, u) ==
                     to_bdd(oracle::to_set(expect.bits())),
                 "symbolic residuum");
        ++residua;
      }
    }
  }
  const FeatureUniverse u4(feature_names(4), {});
  bdd::Manager m4(4);
  const auto fig = bdd::from_expr(
      m4, u4, parse_feature_expr("((f0 & f1) | (!f0 & !f1)) & ((f2 & f3) | (!f2 & !f3))"));
  const std::size_t nodes = m4.inner_node_count(fig);
  c.expect(nodes == 6, "four-feature example has " + std::to_string(nodes) + " inner nodes");
  if (c.ok()) {
    c.out.detail = std::to_string(comparisons) + " canonicity checks, " +
                   std::to_string(corpus) + " approximations, " + std::to_string(residua) +
                   " residua, example diagram 6 inner nodes";
  }
  return c.out;
}

// 5. Properties of the fixpoint operator.
Outcome fixpoint_properties() {
  Check c;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto [l, r] = random_lats_pair(rng);
    ExplicitAlgebra alg(l.poset);
    const M r2 = random_matrix(rng, *l.poset, l.num_states(), r.num_states());
    const M r1 =
        meet_entrywise(alg, r2, random_matrix(rng, *l.poset, l.num_states(), r.num_states()));
    c.expect(leq_entrywise(alg, apply_F_matrix(alg, r1, base(l), base(r)),
                           apply_F_matrix(alg, r2, base(l), base(r))),
             "F not monotone");
    c.expect(apply_F_matrix(alg, r2, base(l), base(r)) ==
                 apply_F_direct(alg, r2, base(l), base(r)),
             "matrix form differs from direct form");
    c.expect(boolean_vs_lattice(r2, l, r).approximation_agrees,
             "approximated Boolean step differs from lattice step");
    const auto d = ConditionPoset::discrete(l.poset->names());
    const Lats dl = rebase_discrete(l, d);
    const Lats dr = rebase_discrete(r, d);
    ExplicitAlgebra dalg(dl.poset);
    const M dr2 = random_matrix(rng, *dl.poset, dl.num_states(), dr.num_states());
    c.expect(apply_F_boolean(dalg, dr2, base(dl), base(dr)) ==
                 apply_F_matrix(dalg, dr2, base(dl), base(dr)),
             "Boolean form differs on a discrete order");
  }
  // Applications of F, counting the one that confirms stability.
  std::size_t over = 0, max_iterations = 0;
  for (int i = 0; i < 100; ++i) {
    auto [cl, unused] = random_cts_pair(rng, RandomModelParams{});
    (void)unused;
    const Lats l = cts_to_lats(cl);
    const std::size_t iterations = greatest_bisimulation(l, l).trace.iterations;
    max_iterations = std::max(max_iterations, iterations);
    over += iterations > l.num_states();
  }
  c.expect(over == 0, std::to_string(over) + " self-comparisons needed more than |X| iterations");
  RandomModelParams single;
  single.max_actions = 1;
  single.order_density = 0.0;
  std::size_t fitted = 0;
  for (int i = 0; i < 100;) {
    auto [cl, unused] = random_cts_pair(rng, single);
    (void)unused;
    const Lats l = cts_to_lats(cl);
    if (l.num_actions() != 1) continue;
    ++i;
    ExplicitAlgebra alg(l.poset);
    const M star = greatest_bisimulation(l, l).relation;
    const M rel = i % 2 ? random_matrix(rng, *l.poset, l.num_states(), l.num_states())
                        : meet_entrywise(alg, star,
                                         random_matrix(rng, *l.poset, l.num_states(),
                                                       l.num_states()));
    const bool fit = fitting_check(l, rel);
    c.expect(fit == is_bisimulation(alg, rel, base(l), base(l)),
             "matrix inequalities disagree with the post-fixpoint test");
    fitted += fit;
  }
  if (c.ok()) {
    c.out.detail = "100 random cases per law; self-comparison iterations <= |X| (max " +
                   std::to_string(max_iterations) + "); " + std::to_string(fitted) +
                   "/100 single-action relations are bisimulations";
  }
  return c.out;
}

// 6. Game strategies against the fixpoint and an exhaustive solver.
Outcome game_coherence() {
  Check c;
  std::size_t instances = 0;
  auto sweep = [&](const GameArena& arena) {
    for (std::size_t x = 0; x < arena.left().num_states(); ++x) {
      for (std::size_t y = 0; y < arena.right().num_states(); ++y) {
        for (std::size_t phi = 0; phi < arena.poset().size(); ++phi) {
          const GameInstance g{x, y, phi};
          // self_play checks M-descent every round and throws on failure.
          const Verdict v = self_play(arena, g);
          c.expect((v.winner == Player::kTwo) == arena.bisimilar(g),
                   "verdict differs at " + arena.describe(g));
          ++instances;
        }
      }
    }
  };
  for (bool prec : {false, true}) {
    auto [l, r] = fixtures::routing_lats(prec);
    sweep(GameArena(l, r));
    sweep(GameArena(l, l));
    sweep(GameArena(r, r));
  }
  auto [fl, fr] = fts_to_lats(fixtures::load_fts("routing_original_fts.json"),
                              fixtures::load_fts("routing_modified_fts.json"));
  sweep(GameArena(fl, fr));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    auto [l, r] = random_lats_pair(rng);
    sweep(GameArena(l, r));
  }
  std::size_t solved = 0;
  RandomModelParams small;
  small.max_states = 4;
  small.max_conditions = 3;
  for (int i = 0; i < 100; ++i) {
    auto [cl, cr] = random_cts_pair(rng, small);
    const auto [l, r] = align(cl, cr);
    const auto sol = oracle::solve_game(l, r);
    const GameArena arena(cts_to_lats(l), cts_to_lats(r));
    for (std::size_t x = 0; x < l.states.size(); ++x) {
      for (std::size_t y = 0; y < r.states.size(); ++y) {
        for (std::size_t phi = 0; phi < l.poset->size(); ++phi) {
          const GameInstance g{x, y, phi};
          const bool p1 = sol.player1_wins(x, y, phi);
          c.expect(p1 != arena.bisimilar(g), "solver differs from R*");
          c.expect((self_play(arena, g).winner == Player::kOne) == p1,
                   "solver differs from self-play");
          ++solved;
        }
      }
    }
  }
  if (c.ok()) {
    c.out.detail = std::to_string(instances) + " self-play instances, " +
                   std::to_string(solved) + " solver instances";
  }
  return c.out;
}

// 7. Scaling of the explicit backend against the symbolic one.
Outcome benchmark_trend() {
  Check c;
  const auto t0 = Clock::now();
  BenchOptions opts;
  opts.runs = 5;
  const BenchReport rep = run_bench(opts);
  for (const auto& row : rep.rows) {
    c.expect(row.agree.value_or(false),
             "backends disagree or did not finish at n=" + std::to_string(row.n));
  }
  const BenchRow* r5 = rep.row(5);
  const BenchRow* r10 = rep.row(10);
  const bool have = r5 && r10 && r5->ratio && r10->ratio;
  c.expect(have, "missing ratio at n=5 or n=10");
  const double jump = have ? *r10->ratio / *r5->ratio : 0.0;
  const double secs = seconds_since(t0);
  c.expect(jump >= 4.0, "ratio jump " + std::to_string(jump));
  c.expect(secs <= 900.0, "took " + std::to_string(secs) + " s");
  std::cout << rep.to_table();
  if (c.ok()) {
    c.out.detail = "ratio " + std::to_string(*r5->ratio) + " at n=5, " +
                   std::to_string(*r10->ratio) + " at n=10 (" + std::to_string(jump) +
                   "x), all rows agree";
  }
  return c.out;
}

}  // namespace
}  // namespace condbisim

int main() {
  using condbisim::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"routing verdicts", condbisim::routing_verdicts},
      {"oracle equivalence", condbisim::oracle_equivalence},
      {"lattice algebra", condbisim::lattice_suite},
      {"BDD correctness", condbisim::bdd_correctness},
      {"fixpoint properties", condbisim::fixpoint_properties},
      {"game coherence", condbisim::game_coherence},
      {"benchmark trend", condbisim::benchmark_trend},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first
              << "): " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
