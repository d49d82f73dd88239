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

#ifndef CONDBISIM_COMMANDS_HPP_
#define CONDBISIM_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace condbisim {

enum class Backend { kExplicit, kBdd };

/// Everything a command needs; filled in by the command-line front end.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  Backend backend = Backend::kExplicit;
  bool precedence = false;
  bool close = false;
  std::vector<std::string> var_order;
  std::uint64_t seed = 1;
  std::optional<std::string> out;

  // check
  std::optional<std::string> pair;     // "x,y,φ"
  std::optional<std::string> trace;    // file for the fixpoint trace (explicit)
  // convert
  std::string to = "lats";
  // approx
  std::string formula;
  std::vector<std::string> features;
  std::optional<std::vector<std::string>> upgrade;  // default: all features
  std::optional<std::string> dot_prefix;
  // game
  std::string start;                   // "x,y,φ"
  std::optional<int> human;            // 1 or 2: interactive play
  // oracle
  std::size_t random = 0;              // random sweep size, 0 = use inputs
  std::size_t cap = 2'000'000;
  // bench
  std::size_t n_min = 1;
  std::size_t n_max = 10;
  std::int64_t budget_ms = 60'000;
  int runs = 3;
};

/// Runs one command. Exit status: 0 success (and, with --pair, bisimilar),
/// 1 a queried pair is not bisimilar or a sweep found mismatches, 2 errors.
int run_command(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_convert(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_game(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace condbisim

#endif  // CONDBISIM_COMMANDS_HPP_
