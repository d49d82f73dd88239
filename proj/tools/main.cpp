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

// Command-line front end: parses flags into a RunConfig and dispatches.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "condbisim/commands.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using condbisim::Backend;
  condbisim::RunConfig cfg;

  CLI::App app{"Conditional bisimulation checker for condition-, lattice- and featured "
               "transition systems"};
  app.require_subcommand(1);

  std::string backend = "explicit";
  std::string var_order;
  app.add_option("--backend", backend, "Lattice backend: explicit or bdd")
      ->check(CLI::IsMember({"explicit", "bdd"}))
      ->capture_default_str();
  app.add_flag("--precedence", cfg.precedence, "Respect the action precedence order");
  app.add_flag("--close", cfg.close,
               "Replace guards that are not downward-closed by their closure");
  app.add_option("--var-order", var_order, "Comma-separated BDD variable order");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--out", cfg.out, "Write the report to this file");

  auto* check = app.add_subcommand("check", "Compute the greatest conditional bisimulation");
  check->add_option("models", cfg.inputs, "One or two model files")->required()->expected(1, 2);
  check->add_option("--pair", cfg.pair, "Query 'left,right,condition' (exit 0 iff bisimilar)");
  check->add_option("--trace", cfg.trace, "Write the fixpoint trace to this file");

  auto* convert = app.add_subcommand("convert", "Convert a model between cts, lats and fts");
  convert->add_option("model", cfg.inputs, "Model file")->required()->expected(1);
  convert->add_option("--to", cfg.to, "Target kind: cts or lats")->capture_default_str();

  std::string features;
  std::string upgrade;
  bool upgrade_given = false;
  auto* approx = app.add_subcommand("approx", "Approximate a feature formula by a downward-closed BDD");
  approx->add_option("formula", cfg.formula, "Feature expression")->required();
  approx->add_option("--features", features, "Comma-separated features (variable order)")
      ->required();
  approx->add_option("--upgrade", upgrade, "Comma-separated upgrade features (default: all)")
      ->each([&](const std::string&) { upgrade_given = true; });
  approx->add_option("--dot", cfg.dot_prefix, "Also write <prefix>.input.dot/.output.dot");

  auto* game = app.add_subcommand("game", "Play the conditional bisimulation game");
  game->add_option("models", cfg.inputs, "One or two model files")->required()->expected(1, 2);
  game->add_option("--start", cfg.start, "Start instance 'left,right,condition'")->required();
  game->add_option("--human", cfg.human, "Play interactively as player 1 or 2");

  auto* oracle = app.add_subcommand("oracle", "Brute-force conditional bisimilarity per condition");
  oracle->add_option("models", cfg.inputs, "One or two model files")->expected(0, 2);
  oracle->add_option("--pair", cfg.pair, "Query 'left,right,condition'");
  oracle->add_option("--random", cfg.random, "Compare with the fixpoint on N random pairs");
  oracle->add_option("--cap", cfg.cap, "Maximum |X|*|Y|*|conditions|")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Time both backends on the scaling family");
  bench->add_option("--n-min", cfg.n_min)->capture_default_str();
  bench->add_option("--n-max", cfg.n_max)->capture_default_str();
  bench->add_option("--budget-ms", cfg.budget_ms, "Budget per backend per n")
      ->capture_default_str();
  bench->add_option("--runs", cfg.runs, "Timed runs after one warm-up")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.backend = backend == "bdd" ? Backend::kBdd : Backend::kExplicit;
  if (!var_order.empty()) cfg.var_order = split_commas(var_order);
  if (!features.empty()) cfg.features = split_commas(features);
  if (upgrade_given) cfg.upgrade = split_commas(upgrade);
  if (cfg.command == "oracle" && cfg.random == 0 && cfg.inputs.empty()) {
    std::cerr << "error: oracle needs model files or --random N\n";
    return 2;
  }
  return condbisim::run_command(cfg, std::cin, std::cout, std::cerr);
}
