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

#include "condbisim/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "condbisim/bisim.hpp"
#include "condbisim/errors.hpp"
#include "condbisim/models.hpp"
#include "json.hpp"

namespace condbisim {
namespace {

__extension__ using Wide = unsigned __int128;

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  const Wide p = static_cast<Wide>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kPrime) + static_cast<std::uint64_t>(p >> 61);
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t one_minus(std::uint64_t a) { return a == 0 ? 1 : add(1, kPrime - a); }

struct Point {
  std::vector<std::uint64_t> coords;   // one per declared feature
  std::vector<std::uint64_t> weights;  // one per (x, y)
};

Point random_point(std::size_t features, std::size_t entries, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, kPrime - 1);
  Point p;
  for (std::size_t i = 0; i < features; ++i) p.coords.push_back(dist(rng));
  for (std::size_t i = 0; i < entries; ++i) p.weights.push_back(dist(rng));
  return p;
}

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// Runs `once` (which returns the result of one timed run) for a warm-up and
// opts.runs measured repetitions within the budget.
template <class Run>
BenchCell measure(const BenchOptions& opts, Run once) {
  BenchCell cell;
  const auto deadline = Clock::now() + opts.budget;
  try {
    once(deadline, cell);  // warm-up
    std::vector<double> times;
    for (int i = 0; i < std::max(1, opts.runs); ++i) {
      const auto t0 = Clock::now();
      once(deadline, cell);
      times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
      if (Clock::now() > deadline) throw DeadlineExceeded("budget exhausted");
    }
    cell.ms = median(times);
  } catch (const DeadlineExceeded&) {
    cell = BenchCell{};
    cell.timeout = true;
  }
  return cell;
}

std::string format_ms(const BenchCell& c) {
  if (c.timeout) return "timeout";
  if (!c.ms) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << *c.ms;
  return s.str();
}

}  // namespace

std::uint64_t relation_checksum(const Matrix<LatticeElement>& r,
                                const std::vector<Configuration>& configurations,
                                std::size_t num_features, std::uint64_t seed) {
  const Point pt = random_point(num_features, r.rows() * r.cols(), seed);
  std::vector<std::uint64_t> value(configurations.size());
  for (std::size_t i = 0; i < configurations.size(); ++i) {
    std::uint64_t v = 1;
    for (std::size_t f = 0; f < num_features; ++f) {
      v = mul(v, (configurations[i] >> f) & 1U ? pt.coords[f] : one_minus(pt.coords[f]));
    }
    value[i] = v;
  }
  std::uint64_t total = 0;
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t y = 0; y < r.cols(); ++y) {
      std::uint64_t sum = 0;
      const Bits& b = r(x, y).bits();
      for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) sum = add(sum, value[i]);
      total = add(total, mul(sum, pt.weights[x * r.cols() + y]));
    }
  }
  return total;
}

std::uint64_t relation_checksum(const Matrix<bdd::Bdd>& r, const SymbolicPair& pair,
                                std::uint64_t seed) {
  const Point pt = random_point(pair.declared.size(), r.rows() * r.cols(), seed);
  const bdd::Manager& m = *pair.manager;
  std::vector<std::uint64_t> coord(pair.universe.size());
  for (std::size_t v = 0; v < coord.size(); ++v) {
    coord[v] = pt.coords[pair.declared.index_of(pair.universe.name(v))];
  }
  // Skipped variables contribute r + (1 - r) = 1, so one pass over the
  // nodes suffices.
  std::unordered_map<std::uint32_t, std::uint64_t> memo;
  auto eval = [&](auto&& self, bdd::Bdd b) -> std::uint64_t {
    if (b.is_zero()) return 0;
    if (b.is_one()) return 1;
    if (auto it = memo.find(b.id()); it != memo.end()) return it->second;
    const std::uint64_t c = coord[m.var_of(b)];
    const std::uint64_t v =
        add(mul(c, self(self, m.high(b))), mul(one_minus(c), self(self, m.low(b))));
    memo.emplace(b.id(), v);
    return v;
  };
  std::uint64_t total = 0;
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t y = 0; y < r.cols(); ++y) {
      total = add(total, mul(eval(eval, r(x, y)), pt.weights[x * r.cols() + y]));
    }
  }
  return total;
}

const BenchRow* BenchReport::row(std::size_t n) const {
  for (const auto& r : rows) {
    if (r.n == n) return &r;
  }
  return nullptr;
}

BenchReport run_bench(const BenchOptions& opts) {
  BenchReport report;
#ifdef __VERSION__
  report.compiler = __VERSION__;
#endif
#ifdef NDEBUG
  report.build = "release";
#else
  report.build = "debug";
#endif
  char host[256] = {};
  if (gethostname(host, sizeof(host) - 1) == 0) report.host = host;
  {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    report.started = buf;
  }
  report.hardware_threads = std::thread::hardware_concurrency();
  report.budget = opts.budget;
  report.runs = opts.runs;

  bool explicit_done = false;
  bool bdd_done = false;
  for (std::size_t n = opts.n_min; n <= opts.n_max; ++n) {
    BenchRow row;
    row.n = n;
    const auto [left, right] = gen_benchmark(n);

    if (explicit_done) {
      row.explicit_backend.timeout = true;
    } else {
      std::optional<Matrix<LatticeElement>> last;
      row.explicit_backend = measure(opts, [&](Clock::time_point deadline, BenchCell& cell) {
        auto [l, r] = fts_to_lats(left, right);
        BisimOptions bo;
        bo.keep_trace = false;
        bo.deadline = deadline;
        auto res = greatest_bisimulation(l, r, bo);
        cell.iterations = res.trace.iterations;
        last = std::move(res.relation);
      });
      if (row.explicit_backend.timeout) {
        explicit_done = true;
      } else {
        const auto cp = configuration_poset(left.features, left.diagram);
        row.explicit_backend.checksum =
            relation_checksum(*last, cp.configurations, left.features.size(), opts.seed);
      }
    }

    if (bdd_done) {
      row.bdd_backend.timeout = true;
    } else {
      std::optional<std::uint64_t> sum;
      row.bdd_backend = measure(opts, [&](Clock::time_point deadline, BenchCell& cell) {
        SymbolicPair p = encode_fts(left, right);
        BisimOptions bo;
        bo.keep_trace = false;
        bo.deadline = deadline;
        auto res = greatest_bisimulation(p.algebra(), p.left, p.right, bo);
        cell.iterations = res.trace.iterations;
        sum = relation_checksum(res.relation, p, opts.seed);
      });
      if (row.bdd_backend.timeout) {
        bdd_done = true;
      } else {
        row.bdd_backend.checksum = sum;
      }
    }

    if (row.explicit_backend.ms && row.bdd_backend.ms) {
      row.ratio = *row.explicit_backend.ms / std::max(*row.bdd_backend.ms, 1e-6);
    }
    if (row.explicit_backend.checksum && row.bdd_backend.checksum) {
      row.agree = *row.explicit_backend.checksum == *row.bdd_backend.checksum;
    }
    report.rows.push_back(row);
    if (opts.progress) {
      std::ostringstream line;
      line << "n=" << n << " explicit=" << format_ms(row.explicit_backend)
           << " bdd=" << format_ms(row.bdd_backend);
      if (row.ratio) line << " ratio=" << std::setprecision(4) << *row.ratio;
      opts.progress(line.str());
    }
    if (explicit_done && bdd_done) break;
  }
  return report;
}

std::string BenchReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json doc;
  ordered_json meta;
  meta["compiler"] = compiler;
  meta["build"] = build;
  meta["host"] = host;
  meta["started"] = started;
  meta["hardware_threads"] = hardware_threads;
  meta["budget_ms"] = budget.count();
  meta["runs"] = runs;
  meta["timing"] = "median of runs after one discarded warm-up, steady clock";
  doc["metadata"] = meta;
  ordered_json rs = ordered_json::array();
  auto cell_json = [](const BenchCell& c) {
    ordered_json j;
    if (c.timeout) {
      j["ms"] = "timeout";
    } else if (c.ms) {
      j["ms"] = *c.ms;
      j["iterations"] = c.iterations;
    } else {
      j["ms"] = nullptr;
    }
    if (c.checksum) {
      std::ostringstream hex;
      hex << std::hex << std::setw(16) << std::setfill('0') << *c.checksum;
      j["checksum"] = hex.str();
    }
    return j;
  };
  for (const auto& r : rows) {
    ordered_json j;
    j["n"] = r.n;
    j["explicit"] = cell_json(r.explicit_backend);
    j["bdd"] = cell_json(r.bdd_backend);
    j["ratio"] = r.ratio ? ordered_json(*r.ratio) : ordered_json(nullptr);
    j["agree"] = r.agree ? ordered_json(*r.agree) : ordered_json(nullptr);
    rs.push_back(std::move(j));
  }
  doc["rows"] = std::move(rs);
  return doc.dump(2) + "\n";
}

std::string BenchReport::to_table() const {
  std::ostringstream out;
  out << std::left << std::setw(4) << "n" << std::right << std::setw(16) << "explicit (ms)"
      << std::setw(14) << "bdd (ms)" << std::setw(12) << "ratio" << std::setw(8) << "agree"
      << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(4) << r.n << std::right << std::setw(16)
        << format_ms(r.explicit_backend) << std::setw(14) << format_ms(r.bdd_backend);
    if (r.ratio) {
      std::ostringstream ratio;
      ratio << std::fixed << std::setprecision(2) << *r.ratio;
      out << std::setw(12) << ratio.str();
    } else {
      out << std::setw(12) << "-";
    }
    out << std::setw(8) << (r.agree ? (*r.agree ? "yes" : "NO") : "-") << '\n';
  }
  return out.str();
}

}  // namespace condbisim
