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

#ifndef CONDBISIM_BENCH_HPP_
#define CONDBISIM_BENCH_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "condbisim/bdd.hpp"
#include "condbisim/lattice.hpp"
#include "condbisim/matrix.hpp"
#include "condbisim/symbolic.hpp"

namespace condbisim {

struct BenchOptions {
  std::size_t n_min = 1;
  std::size_t n_max = 10;
  // Wall-clock budget per backend per n, covering warm-up and all runs.
  std::chrono::milliseconds budget{60'000};
  int runs = 3;  // timed runs after one discarded warm-up
  std::uint64_t seed = 0x5eed;
  std::function<void(const std::string&)> progress;
};

struct BenchCell {
  std::optional<double> ms;  // median wall time
  bool timeout = false;      // budget exhausted (or skipped after an earlier timeout)
  std::optional<std::uint64_t> checksum;
  std::size_t iterations = 0;
};

struct BenchRow {
  std::size_t n = 0;
  BenchCell explicit_backend;
  BenchCell bdd_backend;
  std::optional<double> ratio;  // explicit / bdd
  std::optional<bool> agree;    // checksums equal, when both finished
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string compiler;
  std::string build;
  std::string host;
  std::string started;
  unsigned hardware_threads = 0;
  std::chrono::milliseconds budget{0};
  int runs = 0;

  const BenchRow* row(std::size_t n) const;
  std::string to_json() const;
  std::string to_table() const;
};

/// Times both backends on the scaling family for each n in range.
BenchReport run_bench(const BenchOptions& opts);

/// Fingerprint of a relation over configurations: Σ_{x,y} w(x,y)·P_{x,y}(r),
/// where P is the multilinear extension of the configuration set R(x,y)
/// evaluated at a seeded random point, all mod 2^61 - 1. Equal relations
/// give equal values; different ones collide with negligible probability.
std::uint64_t relation_checksum(const Matrix<LatticeElement>& r,
                                const std::vector<Configuration>& configurations,
                                std::size_t num_features, std::uint64_t seed);
std::uint64_t relation_checksum(const Matrix<bdd::Bdd>& r, const SymbolicPair& pair,
                                std::uint64_t seed);

}  // namespace condbisim

#endif  // CONDBISIM_BENCH_HPP_
