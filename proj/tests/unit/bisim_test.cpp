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


#include <random>

#include <gtest/gtest.h>

#include "condbisim/bisim.hpp"
#include "condbisim/errors.hpp"
#include "condbisim/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace condbisim {
namespace {

using M = Matrix<LatticeElement>;
using Names = std::vector<std::string>;

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

M identity(const ConditionPoset& p, std::size_t n) {
  M m(n, n, LatticeElement::bottom(p));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = LatticeElement::top(p);
  return m;
}

std::pair<Lats, Lats> random_lats_pair(std::mt19937_64& rng, RandomModelParams params = {}) {
  auto [l, r] = random_cts_pair(rng, params);
  auto [al, ar] = align(l, r);
  return {cts_to_lats(al), cts_to_lats(ar)};
}

const GuardedLts<LatticeElement>& base(const Lats& l) { return l; }

TEST(MatrixOps, IdentityAndZero) {
  std::mt19937_64 rng(31);
  auto p = fixtures::four_point_poset();
  ExplicitAlgebra alg(p);
  const M v = random_matrix(rng, *p, 3, 3);
  EXPECT_EQ(otimes_mul(alg, identity(*p, 3), v), v);
  EXPECT_EQ(std_mul(alg, identity(*p, 3), v), v);
  const M zero(3, 3, LatticeElement::bottom(*p));
  EXPECT_EQ(std_mul(alg, zero, v), zero);
  M one_l(1, 1, random_element(rng, *p));
  M one_m(1, 1, random_element(rng, *p));
  EXPECT_EQ(otimes_mul(alg, one_l, one_m)(0, 0), residuum(one_l(0, 0), one_m(0, 0)));
  EXPECT_THROW(std_mul(alg, M(2, 3, alg.bottom()), M(2, 3, alg.bottom())), DimensionMismatch);
  EXPECT_THROW(otimes_mul(alg, M(2, 3, alg.bottom()), M(2, 3, alg.bottom())), DimensionMismatch);
}

TEST(MatrixOps, Associativity) {
  std::mt19937_64 rng(32);
  auto p = fixtures::four_point_poset();
  ExplicitAlgebra alg(p);
  for (int i = 0; i < 50; ++i) {
    const M a = random_matrix(rng, *p, 3, 3);
    const M b = random_matrix(rng, *p, 3, 3);
    const M c = random_matrix(rng, *p, 3, 3);
    ASSERT_EQ(std_mul(alg, std_mul(alg, a, b), c), std_mul(alg, a, std_mul(alg, b, c)));
  }
}

TEST(MatrixOps, BooleanOtimes) {
  std::mt19937_64 rng(33);
  auto p = ConditionPoset::discrete({"p", "q", "r"});
  ExplicitAlgebra alg(p);
  for (int i = 0; i < 50; ++i) {
    const M u = random_matrix(rng, *p, 3, 3);
    const M v = random_matrix(rng, *p, 3, 3);
    ASSERT_EQ(otimes_mul(alg, u, v),
              negate_entrywise(alg, std_mul(alg, u, negate_entrywise(alg, v))));
  }
}

TEST(ApplyF, DeadlocksAndEmptyAlphabet) {
  auto p = fixtures::four_point_poset();
  const Lats l = cts_to_lats(Cts::empty({"x"}, {"t"}, ActionOrder(1), p));
  const Lats r = cts_to_lats(Cts::empty({"y"}, {"t"}, ActionOrder(1), p));
  ExplicitAlgebra alg(p);
  const M zero(1, 1, alg.bottom());
  EXPECT_TRUE(apply_F_direct(alg, zero, base(l), base(r))(0, 0).is_top());
  const Lats le = cts_to_lats(Cts::empty({"x", "z"}, {}, ActionOrder(0), p));
  const Lats re = cts_to_lats(Cts::empty({"y"}, {}, ActionOrder(0), p));
  const M z2(2, 1, alg.bottom());
  EXPECT_EQ(apply_F_matrix(alg, z2, base(le), base(re)), M(2, 1, alg.top()));
}

TEST(ApplyF, MatrixEqualsDirect) {
  std::mt19937_64 rng(34);
  RandomModelParams params;
  params.max_states = 5;
  params.max_conditions = 4;
  for (int i = 0; i < 100; ++i) {
    const auto [l, r] = random_lats_pair(rng, params);
    ExplicitAlgebra alg(l.poset);
    const M rel = random_matrix(rng, *l.poset, l.num_states(), r.num_states());
    ASSERT_EQ(apply_F_matrix(alg, rel, base(l), base(r)),
              apply_F_direct(alg, rel, base(l), base(r)));
  }
}

TEST(ApplyF, BooleanFormOnDiscretePosets) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 60; ++i) {
    auto [l, r] = random_lats_pair(rng);
    // Re-express the guards over the discrete order on the same names.
    auto d = ConditionPoset::discrete(l.poset->names());
    auto rebase = [&](Lats m) {
      for (auto& g : m.guards) {
        for (std::size_t x = 0; x < g.rows(); ++x) {
          for (std::size_t y = 0; y < g.cols(); ++y) {
            g(x, y) = LatticeElement::from_bits(*d, g(x, y).bits());
          }
        }
      }
      m.poset = d;
      return m;
    };
    const Lats dl = rebase(l);
    const Lats dr = rebase(r);
    ExplicitAlgebra alg(d);
    const M rel = random_matrix(rng, *d, dl.num_states(), dr.num_states());
    ASSERT_EQ(apply_F_boolean(alg, rel, base(dl), base(dr)),
              apply_F_matrix(alg, rel, base(dl), base(dr)));
  }
  auto [l, r] = fixtures::routing_lats();
  ExplicitAlgebra alg(l.poset);
  EXPECT_THROW(apply_F_boolean(alg, M(4, 4, alg.top()), base(l), base(r)),
               PreconditionViolation);
}

// With one condition, F is the classical bisimulation step.
TEST(ApplyF, SingleConditionIsClassicalStep) {
  std::mt19937_64 rng(36);
  RandomModelParams params;
  params.max_states = 5;
  params.max_conditions = 1;
  for (int i = 0; i < 60; ++i) {
    const auto [l, r] = random_lats_pair(rng, params);
    ExplicitAlgebra alg(l.poset);
    const M rel = random_matrix(rng, *l.poset, l.num_states(), r.num_states());
    const M out = apply_F_matrix(alg, rel, base(l), base(r));
    for (std::size_t x = 0; x < l.num_states(); ++x) {
      for (std::size_t y = 0; y < r.num_states(); ++y) {
        bool ok = true;
        for (std::size_t a = 0; a < l.num_actions(); ++a) {
          for (std::size_t xp = 0; xp < l.num_states(); ++xp) {
            if (l.guards[a](x, xp).empty()) continue;
            bool found = false;
            for (std::size_t yp = 0; yp < r.num_states(); ++yp) {
              found = found || (!r.guards[a](y, yp).empty() && !rel(xp, yp).empty());
            }
            ok = ok && found;
          }
          for (std::size_t yp = 0; yp < r.num_states(); ++yp) {
            if (r.guards[a](y, yp).empty()) continue;
            bool found = false;
            for (std::size_t xp = 0; xp < l.num_states(); ++xp) {
              found = found || (!l.guards[a](x, xp).empty() && !rel(xp, yp).empty());
            }
            ok = ok && found;
          }
        }
        ASSERT_EQ(out(x, y).is_top(), ok);
      }
    }
  }
}

TEST(ApplyF, Monotone) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const auto [l, r] = random_lats_pair(rng);
    ExplicitAlgebra alg(l.poset);
    const M r2 = random_matrix(rng, *l.poset, l.num_states(), r.num_states());
    const M r1 = meet_entrywise(alg, r2,
                                random_matrix(rng, *l.poset, l.num_states(), r.num_states()));
    ASSERT_TRUE(leq_entrywise(alg, apply_F_matrix(alg, r1, base(l), base(r)),
                              apply_F_matrix(alg, r2, base(l), base(r))));
  }
}

TEST(GreatestBisimulation, RoutingPair) {
  auto [l, r] = fixtures::routing_lats();
  const auto res = greatest_bisimulation(l, r);
  EXPECT_EQ(res.relation(l.state_index("ready1"), r.state_index("ready2")).names(),
            (Names{"a"}));
  EXPECT_EQ(res.relation(l.state_index("unsafe1"), r.state_index("unsafe2")).names(),
            (Names{"a"}));
  // Classically (unsafe1, safe2) agree under b, yet the pair is not in R*.
  EXPECT_TRUE(res.relation(l.state_index("unsafe1"), r.state_index("safe2")).empty());
  // The first step only removes what a single move separates.
  ASSERT_GE(res.trace.relations.size(), 3u);
  const M& r1 = res.trace.relations[1];
  EXPECT_TRUE(r1(l.state_index("ready1"), r.state_index("ready2")).is_top());
  EXPECT_EQ(r1(l.state_index("unsafe1"), r.state_index("safe2")).names(), (Names{}));
  for (auto form : {FForm::kDirect, FForm::kMatrix}) {
    BisimOptions opts;
    opts.form = form;
    EXPECT_EQ(greatest_bisimulation(l, r, opts).relation, res.relation);
  }
}

TEST(GreatestBisimulation, TraceShape) {
  std::mt19937_64 rng(38);
  for (int i = 0; i < 60; ++i) {
    const auto [l, r] = random_lats_pair(rng);
    ExplicitAlgebra alg(l.poset);
    const auto res = greatest_bisimulation(l, r);
    const auto& rs = res.trace.relations;
    ASSERT_EQ(rs.size(), res.trace.iterations + 1);
    ASSERT_EQ(rs.front(), M(l.num_states(), r.num_states(), alg.top()));
    for (std::size_t k = 1; k + 1 < rs.size(); ++k) {
      ASSERT_TRUE(leq_entrywise(alg, rs[k], rs[k - 1]));
      ASSERT_FALSE(rs[k] == rs[k - 1]);
    }
    ASSERT_EQ(rs[rs.size() - 1], rs[rs.size() - 2]);
    ASSERT_EQ(apply_F_matrix(alg, res.relation, base(l), base(r)), res.relation);
    ASSERT_LE(rs.size(), l.num_states() * r.num_states() * l.poset->size() + 2);
  }
}

TEST(GreatestBisimulation, SelfComparisonIsReflexive) {
  std::mt19937_64 rng(39);
  for (int i = 0; i < 40; ++i) {
    auto [c, unused] = random_cts_pair(rng, RandomModelParams{});
    (void)unused;
    const Lats l = cts_to_lats(c);
    const auto res = greatest_bisimulation(l, l);
    for (std::size_t x = 0; x < l.num_states(); ++x) ASSERT_TRUE(res.relation(x, x).is_top());
  }
}

TEST(GreatestBisimulation, DeadlineAndThreads) {
  auto [l, r] = fixtures::routing_lats();
  BisimOptions late;
  late.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  EXPECT_THROW(greatest_bisimulation(l, r, late), DeadlineExceeded);
  BisimOptions threaded;
  threaded.form = FForm::kDirect;
  threaded.threads = 3;
  EXPECT_EQ(greatest_bisimulation(l, r, threaded).relation,
            greatest_bisimulation(l, r).relation);
}

// Largest post-fixpoint below `cap`: iterate R ↦ cap ⊓ F(R).
M post_fixpoint_below(const ExplicitAlgebra& alg, const Lats& l, const Lats& r, M cap) {
  M cur = cap;
  while (true) {
    M next = meet_entrywise(alg, cap, apply_F_matrix(alg, cur, base(l), base(r)));
    if (next == cur) return cur;
    cur = next;
  }
}

TEST(PostFixpoints, JoinClosed) {
  std::mt19937_64 rng(40);
  for (int i = 0; i < 60; ++i) {
    const auto [l, r] = random_lats_pair(rng);
    ExplicitAlgebra alg(l.poset);
    const M a = post_fixpoint_below(
        alg, l, r, random_matrix(rng, *l.poset, l.num_states(), r.num_states()));
    const M b = post_fixpoint_below(
        alg, l, r, random_matrix(rng, *l.poset, l.num_states(), r.num_states()));
    ASSERT_TRUE(is_bisimulation(alg, a, base(l), base(r)));
    ASSERT_TRUE(is_bisimulation(alg, join_entrywise(alg, a, b), base(l), base(r)));
    const M star = greatest_bisimulation(l, r).relation;
    ASSERT_TRUE(leq_entrywise(alg, a, star));
  }
}

TEST(CheckTransfer, RoutingTopRelation) {
  auto [l, r] = fixtures::routing_lats();
  ExplicitAlgebra alg(l.poset);
  const auto v = check_transfer(M(4, 4, alg.top()), l, r);
  const Violation expected{l.state_index("unsafe1"), r.state_index("safe2"),
                           l.action_index("e"), l.poset->index_of("a"),
                           Direction::kLeftToRight};
  EXPECT_NE(std::find(v.begin(), v.end(), expected), v.end());
  EXPECT_FALSE(is_bisimulation(alg, M(4, 4, alg.top()), base(l), base(r)));
  EXPECT_TRUE(check_transfer(M(4, 4, alg.bottom()), l, r).empty());
  EXPECT_TRUE(check_transfer(greatest_bisimulation(l, r).relation, l, r).empty());
}

TEST(CheckTransfer, AgreesWithPostFixpointTest) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto [l, r] = random_lats_pair(rng);
    ExplicitAlgebra alg(l.poset);
    const bool prec = i % 2 == 1;
    M rel = random_matrix(rng, *l.poset, l.num_states(), r.num_states());
    if (i % 3 == 0) {
      BisimOptions opts;
      opts.precedence = prec;
      rel = greatest_bisimulation(l, r, opts).relation;
    }
    ASSERT_EQ(check_transfer(rel, l, r, prec).empty(),
              is_bisimulation(alg, rel, base(l), base(r), prec));
  }
}

TEST(Oracle, RoutingPair) {
  auto [l, r] = fixtures::routing_pair();
  const M o = brute_force_oracle(l, r);
  EXPECT_EQ(o(l.state_index("ready1"), r.state_index("ready2")).names(), (Names{"a"}));
  EXPECT_THROW(brute_force_oracle(l, r, false, 10), CapExceeded);
}

// The family condition matters: asking only for classical bisimilarity at
// every smaller condition would wrongly accept ready1 ~_b ready2.
TEST(Oracle, FamilyIsStrongerThanPointwise) {
  auto [l, r] = fixtures::routing_pair();
  const auto pointwise = oracle::pointwise_bisim(l, r);
  const auto family = oracle::conditional_bisim(l, r, false);
  const auto x = l.state_index("ready1");
  const auto y = r.state_index("ready2");
  EXPECT_EQ(pointwise[x][y], 0b11u);
  EXPECT_EQ(family[x][y], 0b01u);
}

TEST(Oracle, DiscreteOrderIsPerCondition) {
  std::mt19937_64 rng(42);
  RandomModelParams params;
  params.order_density = 0.0;
  for (int i = 0; i < 30; ++i) {
    auto [l, r] = random_cts_pair(rng, params);
    ASSERT_TRUE(l.poset->is_discrete());
    const M o = brute_force_oracle(l, r);
    for (std::size_t phi = 0; phi < l.poset->size(); ++phi) {
      const auto cl = oracle::classical_bisim(l, r, phi, false);
      for (std::size_t x = 0; x < l.states.size(); ++x) {
        for (std::size_t y = 0; y < r.states.size(); ++y) {
          ASSERT_EQ(o(x, y).contains(phi), cl[x][y]);
        }
      }
    }
  }
}

TEST(Oracle, MatchesFixpointAndReference) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 80; ++i) {
    RandomModelParams params;
    params.precedence = i % 2 == 1;
    auto [cl, cr] = random_cts_pair(rng, params);
    const auto [l, r] = align(cl, cr);
    const M o = brute_force_oracle(l, r, params.precedence);
    const auto ref = oracle::conditional_bisim(l, r, params.precedence);
    BisimOptions opts;
    opts.precedence = params.precedence;
    const M g = greatest_bisimulation(cts_to_lats(l), cts_to_lats(r), opts).relation;
    for (std::size_t x = 0; x < l.states.size(); ++x) {
      for (std::size_t y = 0; y < r.states.size(); ++y) {
        ASSERT_EQ(oracle::to_set(o(x, y).bits()), ref[x][y]);
        ASSERT_EQ(g(x, y), o(x, y));
      }
    }
  }
}

TEST(Precedence, EmptyOrderGIsF) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 40; ++i) {
    const auto [l, r] = random_lats_pair(rng);
    ExplicitAlgebra alg(l.poset);
    const M rel = random_matrix(rng, *l.poset, l.num_states(), r.num_states());
    const auto el = escape_terms(alg, base(l));
    const auto er = escape_terms(alg, base(r));
    ASSERT_EQ(apply_G(alg, rel, base(l), base(r), el, er),
              apply_F_matrix(alg, rel, base(l), base(r)));
  }
}

TEST(Precedence, RoutingSafeVersusUnsafe) {
  const Lats l = cts_to_lats(fixtures::load_cts("routing_original_prec.json"));
  BisimOptions opts;
  opts.precedence = true;
  const auto res = greatest_bisimulation(l, l, opts);
  EXPECT_TRUE(res.relation(l.state_index("safe1"), l.state_index("unsafe1")).empty());
  const Cts c = lats_to_cts(l);
  const auto ref = oracle::conditional_bisim(c, c, true);
  EXPECT_EQ(ref[l.state_index("safe1")][l.state_index("unsafe1")], 0u);
  // With precedence the routing pair is still separated at b only.
  auto [pl, pr] = fixtures::routing_lats(true);
  const auto pres = greatest_bisimulation(pl, pr, opts);
  EXPECT_EQ(pres.relation(pl.state_index("ready1"), pr.state_index("ready2")),
            brute_force_oracle(lats_to_cts(pl), lats_to_cts(pr), true)(0, 0));
}

TEST(Precedence, GAndDirectFormAgree) {
  std::mt19937_64 rng(45);
  RandomModelParams params;
  params.precedence = true;
  for (int i = 0; i < 60; ++i) {
    const auto [l, r] = random_lats_pair(rng, params);
    ExplicitAlgebra alg(l.poset);
    const M rel = random_matrix(rng, *l.poset, l.num_states(), r.num_states());
    const auto el = escape_terms(alg, base(l));
    const auto er = escape_terms(alg, base(r));
    ASSERT_EQ(apply_G(alg, rel, base(l), base(r), el, er),
              apply_F_direct(alg, rel, base(l), base(r), &el, &er));
  }
}

// Joining the escape term outside the residuum, (α → β·R) ⊔ esc, is not
// the same operator: l1 → (l2 ⊔ l3) differs from (l1 → l2) ⊔ l3.
TEST(Precedence, EscapeBelongsInsideResiduum) {
  auto p = ConditionPoset::from_pairs({"a", "b"}, {{"a", "b"}});
  const Names acts{"t", "h"};
  const auto order = ActionOrder::from_pairs(acts, {{"t", "h"}});
  Cts x = Cts::empty({"x0", "x1", "x2"}, acts, order, p);
  x.add(0, 0, 0, 1);  // x0 -t,a-> x1
  x.add(0, 1, 0, 2);  // x0 -h,a-> x2
  Cts y = Cts::empty({"y0", "y1"}, acts, order, p);
  y.add(0, 1, 0, 1);  // y0 -h,a-> y1
  const Lats l = cts_to_lats(x);
  const Lats r = cts_to_lats(y);
  BisimOptions opts;
  opts.precedence = true;
  const M star = greatest_bisimulation(l, r, opts).relation;
  EXPECT_TRUE(star(0, 0).is_top());
  EXPECT_EQ(oracle::conditional_bisim(x, y, true)[0][0], 0b11u);

  ExplicitAlgebra alg(p);
  const auto el = escape_terms(alg, base(l));
  const auto er = escape_terms(alg, base(r));
  // One step of the misplaced operator from the top relation.
  const M top(3, 2, alg.top());
  auto outside = [&](std::size_t xs, std::size_t ys) {
    LatticeElement acc = alg.top();
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t xp = 0; xp < 3; ++xp) {
        if (l.guards[a](xs, xp).empty()) continue;
        LatticeElement ans = alg.bottom();
        for (std::size_t yp = 0; yp < 2; ++yp) ans = join(ans, meet(r.guards[a](ys, yp), top(xp, yp)));
        acc = meet(acc, join(residuum(l.guards[a](xs, xp), ans), el[a][xs]));
      }
      for (std::size_t yp = 0; yp < 2; ++yp) {
        if (r.guards[a](ys, yp).empty()) continue;
        LatticeElement ans = alg.bottom();
        for (std::size_t xp = 0; xp < 3; ++xp) ans = join(ans, meet(l.guards[a](xs, xp), top(xp, yp)));
        acc = meet(acc, join(residuum(r.guards[a](ys, yp), ans), er[a][ys]));
      }
    }
    return acc;
  };
  EXPECT_EQ(outside(0, 0).names(), (Names{"a"}));
  EXPECT_TRUE(apply_G(alg, top, base(l), base(r), el, er)(0, 0).is_top());
}

TEST(BooleanVsLattice, ApproximationAgrees) {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 100; ++i) {
    const auto [l, r] = random_lats_pair(rng);
    const M rel = random_matrix(rng, *l.poset, l.num_states(), r.num_states());
    ASSERT_TRUE(boolean_vs_lattice(rel, l, r).approximation_agrees);
  }
}

TEST(BooleanVsLattice, RoutingWitness) {
  auto [l, r] = fixtures::routing_lats();
  ExplicitAlgebra alg(l.poset);
  const auto rep = boolean_vs_lattice(M(4, 4, alg.top()), l, r);
  EXPECT_TRUE(rep.approximation_agrees);
  ASSERT_TRUE(rep.strict_witness.has_value());
  // ready1 and ready2 are B-bisimilar at b.
  const auto x = l.state_index("ready1");
  const auto y = r.state_index("ready2");
  EXPECT_EQ(*rep.strict_witness, std::make_tuple(x, y, l.poset->index_of("b")));
}

TEST(BooleanVsLattice, DiscretePosetHasNoWitness) {
  std::mt19937_64 rng(47);
  RandomModelParams params;
  params.order_density = 0.0;
  for (int i = 0; i < 30; ++i) {
    const auto [l, r] = random_lats_pair(rng, params);
    const auto rep = boolean_vs_lattice(M(l.num_states(), r.num_states(),
                                          LatticeElement::top(*l.poset)), l, r);
    ASSERT_TRUE(rep.approximation_agrees);
    ASSERT_FALSE(rep.strict_witness.has_value());
  }
}

TEST(Fitting, AgreesWithPostFixpointTest) {
  std::mt19937_64 rng(48);
  RandomModelParams params;
  params.max_actions = 1;
  params.order_density = 0.0;
  int bisims = 0;
  for (int i = 0; i < 100; ++i) {
    auto [c, unused] = random_cts_pair(rng, params);
    (void)unused;
    Lats l = cts_to_lats(c);
    if (l.num_actions() != 1) continue;
    ExplicitAlgebra alg(l.poset);
    ASSERT_TRUE(fitting_check(l, identity(*l.poset, l.num_states())));
    const M star = greatest_bisimulation(l, l).relation;
    ASSERT_TRUE(fitting_check(l, star));
    const M rel = i % 2 ? random_matrix(rng, *l.poset, l.num_states(), l.num_states())
                        : meet_entrywise(alg, star, random_matrix(rng, *l.poset,
                                                                  l.num_states(),
                                                                  l.num_states()));
    const bool fit = fitting_check(l, rel);
    ASSERT_EQ(fit, is_bisimulation(alg, rel, base(l), base(l)));
    bisims += fit;
  }
  EXPECT_GT(bisims, 0);
  auto [rl, rr] = fixtures::routing_lats();
  EXPECT_THROW(fitting_check(rl, M(4, 4, LatticeElement::top(*rl.poset))),
               PreconditionViolation);
}

}  // namespace
}  // namespace condbisim
