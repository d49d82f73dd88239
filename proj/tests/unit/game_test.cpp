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
#include <sstream>

#include <gtest/gtest.h>

#include "condbisim/errors.hpp"
#include "condbisim/game.hpp"
#include "condbisim/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace condbisim {
namespace {

using T = SeparationTable;

GameArena routing_arena() {
  auto [l, r] = fixtures::routing_lats();
  return GameArena(l, r);
}

TEST(SeparationTable, Routing) {
  const GameArena arena = routing_arena();
  EXPECT_EQ(arena.table().at(arena.instance("ready1", "ready2", "a")), T::kInfinity);
  const int mb = arena.table().at(arena.instance("ready1", "ready2", "b"));
  EXPECT_NE(mb, T::kInfinity);
  EXPECT_GE(mb, 0);
}

TEST(SeparationTable, MatchesTraceDefinition) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 30; ++i) {
    auto [cl, cr] = random_cts_pair(rng, RandomModelParams{});
    const GameArena arena(cts_to_lats(cl), cts_to_lats(cr));
    const auto& rs = arena.trace().relations;
    for (std::size_t x = 0; x < arena.left().num_states(); ++x) {
      for (std::size_t y = 0; y < arena.right().num_states(); ++y) {
        for (std::size_t phi = 0; phi < arena.poset().size(); ++phi) {
          int last = -1;
          for (std::size_t k = 0; k < rs.size(); ++k) {
            if (rs[k](x, y).contains(phi)) last = static_cast<int>(k);
          }
          const bool in_star = rs.back()(x, y).contains(phi);
          ASSERT_EQ(arena.table().at(x, y, phi), in_star ? T::kInfinity : last);
        }
      }
    }
  }
}

TEST(SeparationTable, SelfComparisonDiagonal) {
  const Lats l = cts_to_lats(fixtures::load_cts("routing_original.json"));
  const GameArena arena(l, l);
  for (std::size_t x = 0; x < l.num_states(); ++x) {
    for (std::size_t phi = 0; phi < l.poset->size(); ++phi) {
      EXPECT_EQ(arena.table().at(x, x, phi), T::kInfinity);
    }
  }
}

TEST(SelfPlay, RoutingVerdicts) {
  const GameArena arena = routing_arena();
  EXPECT_EQ(self_play(arena, arena.instance("ready1", "ready2", "a")).winner, Player::kTwo);
  const auto v = self_play(arena, arena.instance("ready1", "ready2", "b"));
  EXPECT_EQ(v.winner, Player::kOne);
  EXPECT_LE(v.rounds, arena.left().num_states() + 1);
  const Lats l = cts_to_lats(fixtures::load_cts("routing_original.json"));
  const GameArena self(l, l);
  for (std::size_t x = 0; x < l.num_states(); ++x) {
    EXPECT_EQ(self_play(self, {x, x, 1}).winner, Player::kTwo);
  }
}

TEST(Player1, StrictDescentAndDeterminism) {
  const GameArena arena = routing_arena();
  const GameInstance g = arena.instance("ready1", "ready2", "b");
  const Move m = player1_move(arena, g);
  EXPECT_EQ(m, player1_move(arena, g));
  for (std::size_t r : arena.replies(g, m)) {
    EXPECT_LT(arena.table().at(arena.after(m, r)), arena.table().at(g));
  }
  EXPECT_THROW(player1_move(arena, arena.instance("ready1", "ready2", "a")), NotWinnable);
}

TEST(Player1, ZeroIndexMeansImmediateWin) {
  std::mt19937_64 rng(62);
  int seen = 0;
  for (int i = 0; i < 60; ++i) {
    auto [cl, cr] = random_cts_pair(rng, RandomModelParams{});
    const GameArena arena(cts_to_lats(cl), cts_to_lats(cr));
    for (std::size_t x = 0; x < arena.left().num_states(); ++x) {
      for (std::size_t y = 0; y < arena.right().num_states(); ++y) {
        for (std::size_t phi = 0; phi < arena.poset().size(); ++phi) {
          const GameInstance g{x, y, phi};
          if (arena.table().at(g) != 0) continue;
          ++seen;
          const Move m = player1_move(arena, g);
          ASSERT_TRUE(arena.replies(g, m).empty());
          ASSERT_FALSE(player2_reply(arena, g, m).has_value());
        }
      }
    }
  }
  EXPECT_GT(seen, 0);
}

TEST(Player2, PreservesMembership) {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 40; ++i) {
    auto [cl, cr] = random_cts_pair(rng, RandomModelParams{});
    const GameArena arena(cts_to_lats(cl), cts_to_lats(cr));
    for (std::size_t x = 0; x < arena.left().num_states(); ++x) {
      for (std::size_t y = 0; y < arena.right().num_states(); ++y) {
        for (std::size_t phi = 0; phi < arena.poset().size(); ++phi) {
          const GameInstance g{x, y, phi};
          if (!arena.bisimilar(g)) continue;
          for (const Move& m : arena.moves(g)) {
            const auto r = player2_reply(arena, g, m);
            ASSERT_TRUE(r.has_value());
            ASSERT_TRUE(arena.bisimilar(arena.after(m, *r)));
          }
        }
      }
    }
  }
}

TEST(Player2, IllegalMoveAndDeadlock) {
  const GameArena arena = routing_arena();
  const GameInstance g = arena.instance("ready1", "ready2", "a");
  const Move bogus{arena.poset().index_of("a"), Side::kLeft,
                   arena.left().action_index("e"), arena.left().state_index("ready1")};
  EXPECT_THROW(player2_reply(arena, g, bogus), IllegalMove);
  const Move too_high{arena.poset().index_of("b"), Side::kLeft,
                      arena.left().action_index("receive"),
                      arena.left().state_index("received1")};
  EXPECT_THROW(player2_reply(arena, g, too_high), IllegalMove);

  auto p = ConditionPoset::from_pairs({"c"}, {});
  const Lats dead = cts_to_lats(Cts::empty({"z"}, {"t"}, ActionOrder(1), p));
  const GameArena still(dead, dead);
  EXPECT_TRUE(still.moves({0, 0, 0}).empty());
  EXPECT_EQ(self_play(still, {0, 0, 0}).winner, Player::kTwo);
}

TEST(Game, AgreesWithExhaustiveSolver) {
  std::mt19937_64 rng(64);
  RandomModelParams params;
  params.max_states = 4;
  params.max_conditions = 3;
  for (int i = 0; i < 80; ++i) {
    auto [cl, cr] = random_cts_pair(rng, params);
    const auto [l, r] = align(cl, cr);
    const auto sol = oracle::solve_game(l, r);
    const GameArena arena(cts_to_lats(l), cts_to_lats(r));
    for (std::size_t x = 0; x < l.states.size(); ++x) {
      for (std::size_t y = 0; y < r.states.size(); ++y) {
        for (std::size_t phi = 0; phi < l.poset->size(); ++phi) {
          const GameInstance g{x, y, phi};
          const bool p1 = sol.player1_wins(x, y, phi);
          ASSERT_EQ(!p1, arena.bisimilar(g));
          ASSERT_EQ(self_play(arena, g).winner == Player::kOne, p1);
        }
      }
    }
  }
}

TEST(Interactive, HumanAttackerCannotWinBisimilarPair) {
  const GameArena arena = routing_arena();
  std::istringstream in(
      "moves\n"
      "upgrade b; left receive -> received1\n"
      "left receive -> received1\n"
      "left check -> unsafe1\n"
      "left e -> ready1\n");
  std::ostringstream out;
  const auto tr = interactive_play(arena, arena.instance("ready1", "ready2", "a"),
                                   Player::kOne, in, out);
  ASSERT_TRUE(tr.winner.has_value());
  EXPECT_EQ(*tr.winner, Player::kTwo);
  const std::string text = out.str();
  EXPECT_NE(text.find("instance: (ready1 | ready2 | a)"), std::string::npos);
  EXPECT_NE(text.find("rejected: condition 'b' is not below a"), std::string::npos);
  EXPECT_EQ(text.find("Player 2 cannot answer"), std::string::npos);
}

TEST(Interactive, QuitAndHint) {
  const GameArena arena = routing_arena();
  std::istringstream in("hint\nquit\n");
  std::ostringstream out;
  const auto tr = interactive_play(arena, arena.instance("ready1", "ready2", "b"),
                                   Player::kOne, in, out);
  EXPECT_FALSE(tr.winner.has_value());
  EXPECT_EQ(tr.lines.back(), "quit");
  EXPECT_NE(out.str().find("hint: "), std::string::npos);
}

TEST(Interactive, HumanDefenderLoses) {
  const GameArena arena = routing_arena();
  // Always answer with the engine's own hint; Player 1 still wins at b.
  std::string script;
  for (int i = 0; i < 10; ++i) script += "hint\n";
  std::istringstream probe(script);
  std::ostringstream sink;
  const auto hints = interactive_play(arena, arena.instance("ready1", "ready2", "b"),
                                      Player::kTwo, probe, sink);
  EXPECT_FALSE(hints.winner.has_value());  // only hints, then end of input

  // Whatever legal answers the defender picks, the attacker's index descends.
  std::string answers;
  for (int i = 0; i < 12; ++i) answers += "ready2\nreceived2\nsafe2\nunsafe2\n";
  std::istringstream in(answers);
  std::ostringstream out;
  const auto tr = interactive_play(arena, arena.instance("ready1", "ready2", "b"),
                                   Player::kTwo, in, out);
  ASSERT_TRUE(tr.winner.has_value());
  EXPECT_EQ(*tr.winner, Player::kOne);
}

}  // namespace
}  // namespace condbisim
