// Copyright 2026 The correq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CORREQ_EXPLORER_HPP_
#define CORREQ_EXPLORER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "correq/canonical.hpp"
#include "correq/constraints.hpp"
#include "correq/equilibrium.hpp"
#include "correq/errors.hpp"
#include "correq/game_core.hpp"
#include "correq/parallel.hpp"
#include "correq/rational.hpp"

namespace correq {

inline constexpr std::uint64_t kDefaultGridCap = 10'000'000;

// Number of compositions of m into k nonnegative parts, C(m+k-1, k-1).
inline std::uint64_t simplex_grid_size(std::size_t k, int m) {
  if (k == 0 || m < 1) throw InputError("grid needs k >= 1 profiles and m >= 1");
  unsigned __int128 count = 1;
  for (std::size_t j = 1; j < k; ++j) {
    count = count * (static_cast<unsigned __int128>(m) + j) / j;
    if (count > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw ResourceError("grid size overflows");
    }
  }
  return static_cast<std::uint64_t>(count);
}

namespace detail {

// Advances a composition to its successor in ascending lexicographic order.
// Returns false from the last composition (m, 0, ..., 0).
inline bool next_composition(std::vector<int>& c) {
  const std::size_t k = c.size();
  if (k == 1) return false;
  if (c[k - 1] > 0) {
    int t = c[k - 1];
    c[k - 1] = t - 1;
    c[k - 2] += 1;
    return true;
  }
  std::size_t l = k - 1;
  while (l > 0 && c[l] == 0) --l;
  if (l == 0) return false;
  int t = c[l];
  c[l] = 0;
  c[l - 1] += 1;
  c[k - 1] = t - 1;
  return true;
}

}  // namespace detail

// Streams every composition of m into k parts as counts (c_0, ..., c_{k-1}),
// ascending lexicographic order, without materializing the grid.
template <class Fn>
void for_each_grid_point(std::size_t k, int m, std::uint64_t cap, Fn&& fn) {
  if (simplex_grid_size(k, m) > cap) throw ResourceError("grid size exceeds cap");
  std::vector<int> c(k, 0);
  c[k - 1] = m;
  do {
    fn(static_cast<const std::vector<int>&>(c));
  } while (detail::next_composition(c));
}

template <class S>
Distribution<S> grid_distribution(const std::vector<int>& counts, int m) {
  std::vector<S> w(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    w[a] = scalar_traits<S>::from_ratio(counts[a], m);
  }
  return Distribution<S>(std::move(w));
}

template <class S>
struct ClassificationRecord {
  std::vector<S> weights;
  bool in_c = false;
  bool in_d = false;
  bool is_cce = false;
  std::vector<S> utilities;
  S welfare = scalar_traits<S>::zero();
};

struct ExplorerOptions {
  std::uint64_t cap = kDefaultGridCap;
  int threads = 0;  // 0: CCE_NUM_THREADS env var, else hardware concurrency
};

namespace detail {

template <class S>
ClassificationRecord<S> classify_one(const Game<S>& game, const FeasibleSet<S>& feasible,
                                     const std::vector<int>& counts, int m) {
  Distribution<S> p = grid_distribution<S>(counts, m);
  ClassificationRecord<S> record;
  record.in_c = feasible.contains(p);
  record.in_d = is_ce_distribution(game, p).verdict;
  record.is_cce = is_cce_distribution(game, p, feasible).verdict;
  if (record.in_c && record.in_d && !record.is_cce) {
    throw std::logic_error("feasible correlated equilibrium distribution rejected");
  }
  record.utilities = expected_utility(game, p);
  record.welfare = scalar_traits<S>::zero();
  for (const S& u : record.utilities) record.welfare += u;
  record.weights = p.weights();
  return record;
}

}  // namespace detail

// Classifies every grid distribution against the feasible set, the polytope
// of correlated equilibrium distributions, and the constrained correlated
// equilibrium membership test. Records reach the sink in grid order
// regardless of the thread count.
template <class S, class Sink>
void classify(const Game<S>& game, const FeasibleSet<S>& feasible, int m, Sink&& sink,
              const ExplorerOptions& options = {}) {
  const std::size_t k = game.num_profiles();
  if (feasible.dimension() != k) {
    throw InputError("feasible set dimension does not match the game");
  }
  const int threads = detail::resolve_threads(options.threads);
  if (threads <= 1) {
    for_each_grid_point(k, m, options.cap, [&](const std::vector<int>& counts) {
      sink(detail::classify_one(game, feasible, counts, m));
    });
    return;
  }
  if (simplex_grid_size(k, m) > options.cap) throw ResourceError("grid size exceeds cap");
  const std::size_t batch_size = 4096;
  std::vector<std::vector<int>> batch;
  batch.reserve(batch_size);
  std::vector<ClassificationRecord<S>> records;
  auto flush = [&]() {
    records.assign(batch.size(), ClassificationRecord<S>{});
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::size_t stripe = (batch.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t lo = t * stripe;
      const std::size_t hi = std::min(batch.size(), lo + stripe);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi]() {
        try {
          for (std::size_t r = lo; r < hi; ++r) {
            records[r] = detail::classify_one(game, feasible, batch[r], m);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    for (auto& record : records) sink(std::move(record));
    batch.clear();
    records.clear();
  };
  std::vector<int> c(k, 0);
  c[k - 1] = m;
  do {
    batch.push_back(c);
    if (batch.size() == batch_size) flush();
  } while (detail::next_composition(c));
  flush();
}

template <class S>
struct ClassMaxima {
  std::uint64_t count = 0;
  std::optional<S> max_symmetric;       // max over records of min-coordinate utility
  std::vector<std::optional<S>> max_per_player;

  void add(const ClassificationRecord<S>& record) {
    ++count;
    if (max_per_player.empty()) max_per_player.resize(record.utilities.size());
    S least = record.utilities[0];
    for (const S& u : record.utilities) {
      if (u < least) least = u;
    }
    if (!max_symmetric || least > *max_symmetric) max_symmetric = least;
    for (std::size_t i = 0; i < record.utilities.size(); ++i) {
      if (!max_per_player[i] || record.utilities[i] > *max_per_player[i]) {
        max_per_player[i] = record.utilities[i];
      }
    }
  }
};

template <class S>
struct PayoffSummary {
  std::uint64_t total = 0;
  ClassMaxima<S> feasible;   // in_C
  ClassMaxima<S> ce;         // in_D
  ClassMaxima<S> cce;        // is_CCE
  std::uint64_t cce_outside_d = 0;
  std::uint64_t feasible_and_ce = 0;

  void add(const ClassificationRecord<S>& record) {
    ++total;
    if (record.in_c) feasible.add(record);
    if (record.in_d) ce.add(record);
    if (record.is_cce) cce.add(record);
    if (record.is_cce && !record.in_d) ++cce_outside_d;
    if (record.in_c && record.in_d) ++feasible_and_ce;
  }
};

// Per-class payoff maxima over a finished record stream.
template <class S>
PayoffSummary<S> payoff_extremes(const std::vector<ClassificationRecord<S>>& records) {
  if (records.empty()) throw InputError("no records to summarize");
  PayoffSummary<S> summary;
  for (const auto& record : records) summary.add(record);
  return summary;
}

// CSV emission: one probability column per profile in the documented
// row-major order, then flags, per-player utilities and social welfare.
template <class S>
void write_csv_header(std::ostream& os, const Game<S>& game) {
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    os << "p(" << game.profile_label(a) << "),";
  }
  os << "in_C,in_D,is_CCE";
  for (const auto& player : game.players()) os << ",u_" << player;
  os << ",SW\n";
}

template <class S>
void write_csv_record(std::ostream& os, const ClassificationRecord<S>& record) {
  for (const S& w : record.weights) os << scalar_traits<S>::render(w) << ',';
  os << (record.in_c ? 1 : 0) << ',' << (record.in_d ? 1 : 0) << ','
     << (record.is_cce ? 1 : 0);
  for (const S& u : record.utilities) os << ',' << scalar_traits<S>::render(u);
  os << ',' << scalar_traits<S>::render(record.welfare) << '\n';
}

}  // namespace correq

#endif  // CORREQ_EXPLORER_HPP_
