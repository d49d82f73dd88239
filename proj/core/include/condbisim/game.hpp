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

#ifndef CONDBISIM_GAME_HPP_
#define CONDBISIM_GAME_HPP_

#include <climits>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "condbisim/bisim.hpp"
#include "condbisim/models.hpp"

namespace condbisim {

/// A position (x, y, φ) of the conditional bisimulation game.
struct GameInstance {
  std::size_t left;
  std::size_t right;
  std::size_t condition;

  friend bool operator==(const GameInstance&, const GameInstance&) = default;
};

enum class Side { kLeft, kRight };

/// Player 1 upgrades to `condition` (≤ the current one) and moves on `side`.
struct Move {
  std::size_t condition;
  Side side;
  std::size_t action;
  std::size_t target;

  friend bool operator==(const Move&, const Move&) = default;
};

/// M(x, y, φ) = max{i | φ ∈ R_i(x, y)}, or kInfinity when φ ∈ R*(x, y).
class SeparationTable {
 public:
  static constexpr int kInfinity = INT_MAX;
  // Value of a Player-2 reply that does not exist (Player 1 wins at once).
  static constexpr int kNoReply = -1;

  explicit SeparationTable(const FixpointTrace<LatticeElement>& trace);

  int at(std::size_t x, std::size_t y, std::size_t phi) const {
    return m_[(x * ny_ + y) * nphi_ + phi];
  }
  int at(const GameInstance& g) const { return at(g.left, g.right, g.condition); }

 private:
  std::size_t ny_ = 0;
  std::size_t nphi_ = 0;
  std::vector<int> m_;
};

/// The game between two aligned lattice systems (no action precedence),
/// together with the fixpoint trace that drives both strategies.
class GameArena {
 public:
  GameArena(const Lats& left, const Lats& right);

  const Lats& left() const { return left_; }
  const Lats& right() const { return right_; }
  const ConditionPoset& poset() const { return *left_.poset; }
  const Matrix<LatticeElement>& relation() const { return result_.relation; }
  const FixpointTrace<LatticeElement>& trace() const { return result_.trace; }
  const SeparationTable& table() const { return table_; }

  bool bisimilar(const GameInstance& g) const {
    return result_.relation(g.left, g.right).contains(g.condition);
  }
  /// All legal Player-1 moves, ordered by (condition name, action name,
  /// side, successor name).
  std::vector<Move> moves(const GameInstance& g) const;
  /// Legal answers (successor states on the other side), ordered by name.
  std::vector<std::size_t> replies(const GameInstance& g, const Move& m) const;
  /// The instance after Player 2 answers `m` with `reply`.
  GameInstance after(const Move& m, std::size_t reply) const;

  std::string describe(const GameInstance& g) const;
  std::string describe(const Move& m) const;

  /// Index of the instance's condition/state names; throws on unknown names.
  GameInstance instance(const std::string& x, const std::string& y,
                        const std::string& phi) const;

 private:
  explicit GameArena(std::pair<Lats, Lats> aligned);

  Lats left_;
  Lats right_;
  BisimResult<LatticeElement> result_;
  SeparationTable table_;
};

/// Player 1's winning move: upgrade to a poset-minimal condition with the
/// least ω and take a move attaining it. Throws NotWinnable if M = ∞.
Move player1_move(const GameArena& arena, const GameInstance& g);

/// Player 2's answer to `m`: the successor keeping the new instance in R*
/// when possible, else the one with the largest M. Returns nullopt when no
/// answer exists (Player 2 concedes). Throws IllegalMove for illegal moves.
std::optional<std::size_t> player2_reply(const GameArena& arena, const GameInstance& g,
                                         const Move& m);

enum class Player { kOne, kTwo };

struct Verdict {
  Player winner;
  std::size_t rounds = 0;
  std::vector<std::string> transcript;
};

/// Plays both strategies against each other from `start`. When Player 1
/// cannot win it plays its first legal move; Player 2 wins when Player 1
/// is stuck or an instance repeats. M-descent and R*-preservation are
/// checked every round (std::logic_error on failure).
Verdict self_play(const GameArena& arena, const GameInstance& start);

/// Line-oriented game against the engine. The human plays `human`; input
/// is read from `in` and prompts/answers go to `out`. Returns the
/// transcript; the verdict is absent if the human quits.
struct Transcript {
  std::vector<std::string> lines;
  std::optional<Player> winner;
};
Transcript interactive_play(const GameArena& arena, const GameInstance& start, Player human,
                            std::istream& in, std::ostream& out);

}  // namespace condbisim

#endif  // CONDBISIM_GAME_HPP_
