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

#include "condbisim/game.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "condbisim/errors.hpp"

namespace condbisim {
namespace {

std::pair<Lats, Lats> shared(const Lats& left, const Lats& right) {
  if (left.poset == right.poset && left.actions == right.actions &&
      left.precedence == right.precedence) {
    return {left, right};
  }
  return align(left, right);
}

const Lats& mover(const GameArena& a, Side s) { return s == Side::kLeft ? a.left() : a.right(); }
const Lats& answerer(const GameArena& a, Side s) {
  return s == Side::kLeft ? a.right() : a.left();
}

std::string side_name(Side s) { return s == Side::kLeft ? "left" : "right"; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SeparationTable::SeparationTable(const FixpointTrace<LatticeElement>& trace) {
  if (trace.relations.empty()) throw ValidationError("empty fixpoint trace");
  const auto& last = trace.relations.back();
  const std::size_t nx = last.rows();
  ny_ = last.cols();
  nphi_ = nx * ny_ == 0 ? 0 : last(0, 0).poset().size();
  m_.assign(nx * ny_ * nphi_, 0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny_; ++y) {
      for (std::size_t phi = 0; phi < nphi_; ++phi) {
        int value = 0;
        if (last(x, y).contains(phi)) {
          value = kInfinity;
        } else {
          for (std::size_t i = 0; i < trace.relations.size(); ++i) {
            if (!trace.relations[i](x, y).contains(phi)) break;
            value = static_cast<int>(i);
          }
        }
        m_[(x * ny_ + y) * nphi_ + phi] = value;
      }
    }
  }
}

GameArena::GameArena(const Lats& left, const Lats& right) : GameArena(shared(left, right)) {}

GameArena::GameArena(std::pair<Lats, Lats> aligned)
    : left_(std::move(aligned.first)),
      right_(std::move(aligned.second)),
      result_(greatest_bisimulation(left_, right_)),
      table_(result_.trace) {}

std::vector<Move> GameArena::moves(const GameInstance& g) const {
  const ConditionPoset& p = poset();
  std::vector<Move> out;
  const Bits& below = p.below(g.condition);
  for (auto phi = below.find_first(); phi != Bits::npos; phi = below.find_next(phi)) {
    for (std::size_t a = 0; a < left_.num_actions(); ++a) {
      for (Side s : {Side::kLeft, Side::kRight}) {
        const Lats& m = mover(*this, s);
        const std::size_t from = s == Side::kLeft ? g.left : g.right;
        for (std::size_t t = 0; t < m.num_states(); ++t) {
          if (m.guards[a](from, t).contains(phi)) out.push_back({phi, s, a, t});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const Move& u, const Move& v) {
    const Lats& mu = mover(*this, u.side);
    const Lats& mv = mover(*this, v.side);
    return std::tie(p.name(u.condition), left_.actions[u.action], u.side, mu.states[u.target]) <
           std::tie(p.name(v.condition), left_.actions[v.action], v.side, mv.states[v.target]);
  });
  return out;
}

std::vector<std::size_t> GameArena::replies(const GameInstance& g, const Move& m) const {
  const Lats& other = answerer(*this, m.side);
  const std::size_t from = m.side == Side::kLeft ? g.right : g.left;
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < other.num_states(); ++t) {
    if (other.guards[m.action](from, t).contains(m.condition)) out.push_back(t);
  }
  std::sort(out.begin(), out.end(),
            [&](std::size_t a, std::size_t b) { return other.states[a] < other.states[b]; });
  return out;
}

GameInstance GameArena::after(const Move& m, std::size_t reply) const {
  return m.side == Side::kLeft ? GameInstance{m.target, reply, m.condition}
                               : GameInstance{reply, m.target, m.condition};
}

std::string GameArena::describe(const GameInstance& g) const {
  return "(" + left_.states[g.left] + " | " + right_.states[g.right] + " | " +
         poset().name(g.condition) + ")";
}

std::string GameArena::describe(const Move& m) const {
  return "upgrade " + poset().name(m.condition) + "; " + side_name(m.side) + " " +
         left_.actions[m.action] + " -> " + mover(*this, m.side).states[m.target];
}

GameInstance GameArena::instance(const std::string& x, const std::string& y,
                                 const std::string& phi) const {
  auto c = poset().find(phi);
  if (!c) throw UnknownCondition("unknown condition '" + phi + "'");
  return {left_.state_index(x), right_.state_index(y), *c};
}

namespace {

// Value of `m` for Player 1: the best M Player 2 can reach by answering.
int move_value(const GameArena& arena, const GameInstance& g, const Move& m) {
  int best = SeparationTable::kNoReply;
  for (std::size_t r : arena.replies(g, m)) {
    best = std::max(best, arena.table().at(arena.after(m, r)));
  }
  return best;
}

bool legal(const GameArena& arena, const GameInstance& g, const Move& m) {
  if (!arena.poset().leq(m.condition, g.condition)) return false;
  const Lats& l = mover(arena, m.side);
  if (m.action >= l.num_actions() || m.target >= l.num_states()) return false;
  const std::size_t from = m.side == Side::kLeft ? g.left : g.right;
  return l.guards[m.action](from, m.target).contains(m.condition);
}

}  // namespace

Move player1_move(const GameArena& arena, const GameInstance& g) {
  if (arena.table().at(g) == SeparationTable::kInfinity) {
    throw NotWinnable("Player 1 cannot win from " + arena.describe(g) +
                      ": the states are bisimilar under this condition");
  }
  const ConditionPoset& p = arena.poset();
  // ω per condition and the first move attaining it (moves are ordered).
  std::vector<int> omega(p.size(), SeparationTable::kInfinity);
  std::vector<std::optional<Move>> best(p.size());
  for (const Move& m : arena.moves(g)) {
    const int v = move_value(arena, g, m);
    if (v < omega[m.condition]) {
      omega[m.condition] = v;
      best[m.condition] = m;
    }
  }
  int least = SeparationTable::kInfinity;
  for (auto phi = p.below(g.condition).find_first(); phi != Bits::npos;
       phi = p.below(g.condition).find_next(phi)) {
    least = std::min(least, omega[phi]);
  }
  std::optional<std::size_t> chosen;
  for (auto phi = p.below(g.condition).find_first(); phi != Bits::npos;
       phi = p.below(g.condition).find_next(phi)) {
    if (omega[phi] != least || !best[phi]) continue;
    bool minimal = true;
    for (auto q = p.below(phi).find_first(); q != Bits::npos && minimal;
         q = p.below(phi).find_next(q)) {
      minimal = q == phi || omega[q] != least;
    }
    if (minimal && (!chosen || p.name(phi) < p.name(*chosen))) chosen = phi;
  }
  if (!chosen || least >= arena.table().at(g)) {
    throw std::logic_error("no separating move found from " + arena.describe(g));
  }
  return *best[*chosen];
}

std::optional<std::size_t> player2_reply(const GameArena& arena, const GameInstance& g,
                                         const Move& m) {
  if (!legal(arena, g, m)) {
    throw IllegalMove("illegal move '" + arena.describe(m) + "' at " + arena.describe(g));
  }
  std::optional<std::size_t> pick;
  int pick_value = SeparationTable::kNoReply;
  for (std::size_t r : arena.replies(g, m)) {
    const int v = arena.table().at(arena.after(m, r));
    if (!pick || v > pick_value) {
      pick = r;
      pick_value = v;
    }
  }
  return pick;
}

Verdict self_play(const GameArena& arena, const GameInstance& start) {
  Verdict v;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  GameInstance g = start;
  for (;;) {
    v.transcript.push_back("instance: " + arena.describe(g));
    if (!seen.emplace(g.left, g.right, g.condition).second) {
      v.transcript.push_back("Player 2 wins: instance repeated");
      v.winner = Player::kTwo;
      return v;
    }
    const int m_before = arena.table().at(g);
    std::optional<Move> move;
    if (m_before != SeparationTable::kInfinity) {
      move = player1_move(arena, g);
    } else {
      auto all = arena.moves(g);
      if (!all.empty()) move = all.front();
    }
    if (!move) {
      v.transcript.push_back("Player 2 wins: Player 1 has no move");
      v.winner = Player::kTwo;
      return v;
    }
    v.transcript.push_back("move: " + arena.describe(*move));
    ++v.rounds;
    const auto reply = player2_reply(arena, g, *move);
    if (!reply) {
      v.transcript.push_back("Player 1 wins: Player 2 cannot answer");
      v.winner = Player::kOne;
      return v;
    }
    const GameInstance next = arena.after(*move, *reply);
    v.transcript.push_back("reply: " + answerer(arena, move->side).states[*reply]);
    const int m_after = arena.table().at(next);
    if (m_before != SeparationTable::kInfinity && m_after >= m_before) {
      throw std::logic_error("separation index did not descend at " + arena.describe(g));
    }
    if (m_before == SeparationTable::kInfinity && m_after != SeparationTable::kInfinity) {
      throw std::logic_error("Player 2 left the bisimulation at " + arena.describe(g));
    }
    g = next;
  }
}

namespace {

// Parses "[upgrade <c>;] <left|right> <action> -> <state>".
std::optional<Move> parse_move(const GameArena& arena, const GameInstance& g,
                               const std::string& line, std::string& error) {
  std::string rest = trim(line);
  std::size_t condition = g.condition;
  if (rest.rfind("upgrade", 0) == 0) {
    const auto semi = rest.find(';');
    if (semi == std::string::npos) {
      error = "expected ';' after the upgrade target";
      return std::nullopt;
    }
    const std::string c = trim(rest.substr(7, semi - 7));
    auto idx = arena.poset().find(c);
    if (!idx) {
      error = "unknown condition '" + c + "'";
      return std::nullopt;
    }
    if (!arena.poset().leq(*idx, g.condition)) {
      error = "condition '" + c + "' is not below " + arena.poset().name(g.condition);
      return std::nullopt;
    }
    condition = *idx;
    rest = trim(rest.substr(semi + 1));
  }
  std::istringstream words(rest);
  std::string side, action, arrow, target, extra;
  if (!(words >> side >> action >> arrow >> target) || arrow != "->" || (words >> extra)) {
    error = "expected '[upgrade <cond>;] <left|right> <action> -> <state>'";
    return std::nullopt;
  }
  if (side != "left" && side != "right") {
    error = "side must be 'left' or 'right'";
    return std::nullopt;
  }
  const Side s = side == "left" ? Side::kLeft : Side::kRight;
  const Lats& l = mover(arena, s);
  auto a = std::find(l.actions.begin(), l.actions.end(), action);
  auto t = std::find(l.states.begin(), l.states.end(), target);
  if (a == l.actions.end()) {
    error = "unknown action '" + action + "'";
    return std::nullopt;
  }
  if (t == l.states.end()) {
    error = "unknown " + side + " state '" + target + "'";
    return std::nullopt;
  }
  Move m{condition, s, static_cast<std::size_t>(a - l.actions.begin()),
         static_cast<std::size_t>(t - l.states.begin())};
  if (!legal(arena, g, m)) {
    error = "no such transition under " + arena.poset().name(condition);
    return std::nullopt;
  }
  return m;
}

}  // namespace

Transcript interactive_play(const GameArena& arena, const GameInstance& start, Player human,
                            std::istream& in, std::ostream& out) {
  Transcript tr;
  auto say = [&](const std::string& line) {
    tr.lines.push_back(line);
    out << line << '\n';
  };
  auto finish = [&](Player w, const std::string& why) {
    say(std::string(w == Player::kOne ? "Player 1" : "Player 2") + " wins: " + why);
    tr.winner = w;
  };
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  GameInstance g = start;
  std::string line;
  for (;;) {
    say("instance: " + arena.describe(g));
    if (!seen.emplace(g.left, g.right, g.condition).second) {
      finish(Player::kTwo, "instance repeated");
      return tr;
    }
    const auto legal_moves = arena.moves(g);
    if (legal_moves.empty()) {
      finish(Player::kTwo, "Player 1 has no move");
      return tr;
    }
    Move move{};
    if (human == Player::kOne) {
      for (;;) {
        out << "> " << std::flush;
        if (!std::getline(in, line)) line = "quit";
        line = trim(line);
        if (line.empty()) continue;
        tr.lines.push_back("> " + line);
        if (line == "quit") {
          say("quit");
          return tr;
        }
        if (line == "moves") {
          for (const Move& m : legal_moves) say("  " + arena.describe(m));
          continue;
        }
        if (line == "hint") {
          if (arena.table().at(g) == SeparationTable::kInfinity) {
            say("hint: no winning move; the states are bisimilar under " +
                arena.poset().name(g.condition));
          } else {
            say("hint: " + arena.describe(player1_move(arena, g)));
          }
          continue;
        }
        std::string error;
        if (auto m = parse_move(arena, g, line, error)) {
          move = *m;
          break;
        }
        say("rejected: " + error);
      }
      const auto reply = player2_reply(arena, g, move);
      if (!reply) {
        finish(Player::kOne, "Player 2 cannot answer");
        return tr;
      }
      say("reply: " + answerer(arena, move.side).states[*reply]);
      g = arena.after(move, *reply);
    } else {
      move = arena.table().at(g) == SeparationTable::kInfinity ? legal_moves.front()
                                                               : player1_move(arena, g);
      say("move: " + arena.describe(move));
      const auto options = arena.replies(g, move);
      if (options.empty()) {
        finish(Player::kOne, "Player 2 cannot answer");
        return tr;
      }
      const Lats& other = answerer(arena, move.side);
      std::size_t reply = 0;
      for (;;) {
        out << "> " << std::flush;
        if (!std::getline(in, line)) line = "quit";
        line = trim(line);
        if (line.empty()) continue;
        tr.lines.push_back("> " + line);
        if (line == "quit") {
          say("quit");
          return tr;
        }
        if (line == "moves") {
          for (std::size_t r : options) say("  " + other.states[r]);
          continue;
        }
        if (line == "hint") {
          say("hint: " + other.states[*player2_reply(arena, g, move)]);
          continue;
        }
        auto it = std::find_if(options.begin(), options.end(),
                               [&](std::size_t r) { return other.states[r] == line; });
        if (it == options.end()) {
          say("rejected: '" + line + "' is not a legal answer");
          continue;
        }
        reply = *it;
        break;
      }
      g = arena.after(move, reply);
    }
  }
}

}  // namespace condbisim
