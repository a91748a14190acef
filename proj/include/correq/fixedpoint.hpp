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

#ifndef CORREQ_FIXEDPOINT_HPP_
#define CORREQ_FIXEDPOINT_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "correq/canonical.hpp"
#include "correq/constraints.hpp"
#include "correq/errors.hpp"
#include "correq/game_core.hpp"
#include "correq/parallel.hpp"
#include "correq/rational.hpp"

namespace correq {

// Gain of a feasible relabeling, clipped at zero.
template <class S>
S phi(const Game<S>& game, const Distribution<S>& p, const DeviationMap& beta,
      const FeasibleSet<S>& feasible) {
  if (!feasible.contains(z_transform(game, p, beta))) {
    throw DomainError("deviation map leads outside the feasible set");
  }
  S gain = expected_utility_after_deviation(game, p, beta) -
           expected_utility(game, p, beta.player);
  return gain > scalar_traits<S>::zero() ? gain : scalar_traits<S>::zero();
}

template <class S>
struct PhiTerm {
  int player;
  std::size_t beta_index;  // position in all_deviation_maps order
  S value;
};

template <class S>
struct GMapEvaluation {
  Distribution<S> input;
  Distribution<S> output;
  std::vector<PhiTerm<S>> gains;  // feasible deviations only
  S residual_sq;
  double residual;
};

// Self-map whose fixed points are exactly the constrained correlated
// equilibrium distributions: a convex combination of p with the pushforwards
// of its profitable feasible relabelings.
template <class S>
GMapEvaluation<S> g_map(const Game<S>& game, const Distribution<S>& p,
                        const FeasibleSet<S>& feasible) {
  if (!feasible.convex() || !feasible.closed()) {
    throw CapabilityError("fixed-point map needs a convex closed feasible set");
  }
  if (!feasible.contains(p)) {
    throw InputError("distribution is not feasible");
  }
  std::vector<PhiTerm<S>> gains;
  std::vector<std::pair<S, Distribution<S>>> profitable;  // (phi, pushforward)
  S total = scalar_traits<S>::zero();
  for (int i = 0; i < game.num_players(); ++i) {
    const S here = expected_utility(game, p, i);
    const auto maps = all_deviation_maps(game, i);
    for (std::size_t b = 0; b < maps.size(); ++b) {
      Distribution<S> z = z_transform(game, p, maps[b]);
      if (!feasible.contains(z)) continue;
      S gain = expected_utility_after_deviation(game, p, maps[b]) - here;
      if (!(gain > scalar_traits<S>::zero())) gain = scalar_traits<S>::zero();
      gains.push_back({i, b, gain});
      if (gain > scalar_traits<S>::zero()) {
        total += gain;
        profitable.emplace_back(std::move(gain), std::move(z));
      }
    }
  }
  const S denom = scalar_traits<S>::one() + total;
  std::vector<S> out(p.size(), scalar_traits<S>::zero());
  const S keep = scalar_traits<S>::one() - total / denom;
  for (std::size_t a = 0; a < p.size(); ++a) out[a] = keep * p[a];
  for (const auto& [gain, z] : profitable) {
    const S weight = gain / denom;
    for (std::size_t a = 0; a < p.size(); ++a) out[a] += weight * z[a];
  }
  Distribution<S> output(std::move(out));
  S res_sq = scalar_traits<S>::zero();
  for (std::size_t a = 0; a < p.size(); ++a) {
    S d = output[a] - p[a];
    res_sq += d * d;
  }
  double residual = std::sqrt(scalar_traits<S>::to_double(res_sq));
  return GMapEvaluation<S>{p, std::move(output), std::move(gains), res_sq, residual};
}

struct FixedPointOptions {
  double damping = 1.0;
  int max_iter = 10'000;
  double tol = 1e-8;
  int starts = 16;
  std::uint64_t seed = 0;
};

struct FixedPointResult {
  Distribution<double> point;
  double residual;
  bool converged;
  int iterations;
  int starts_used;
  // How often the set of feasible deviation maps changed between iterations.
  // The set depends on the current iterate, so the map can jump at the
  // boundary of the feasible set; non-convergence there is expected.
  int feasible_set_changes = 0;
};

// Damped iteration p <- (1 - damping) p + damping g(p). An iterate counts as
// converged only when its residual is below tol and the membership test for
// constrained correlated equilibrium distributions accepts it; otherwise the
// best iterate seen is returned with converged = false.
inline FixedPointResult find_fixed_point(const Game<double>& game,
                                         const FeasibleSet<double>& feasible,
                                         const Distribution<double>& start,
                                         const FixedPointOptions& options = {}) {
  if (!feasible.convex() || !feasible.closed()) {
    throw CapabilityError("fixed-point search needs a convex closed feasible set");
  }
  if (!feasible.contains(start)) {
    throw InputError("start distribution is not feasible");
  }
  Distribution<double> p = start;
  Distribution<double> best = start;
  double best_residual = -1.0;
  int set_changes = 0;
  std::vector<std::pair<int, std::size_t>> previous_feasible;
  for (int iter = 0; iter <= options.max_iter; ++iter) {
    GMapEvaluation<double> eval = g_map(game, p, feasible);
    std::vector<std::pair<int, std::size_t>> feasible_maps;
    feasible_maps.reserve(eval.gains.size());
    for (const auto& term : eval.gains) feasible_maps.emplace_back(term.player, term.beta_index);
    if (iter > 0 && feasible_maps != previous_feasible) ++set_changes;
    previous_feasible = std::move(feasible_maps);
    if (best_residual < 0.0 || eval.residual < best_residual) {
      best_residual = eval.residual;
      best = p;
    }
    if (eval.residual < options.tol && is_cce_distribution(game, p, feasible).verdict) {
      return FixedPointResult{p, eval.residual, true, iter, 1, set_changes};
    }
    if (iter == options.max_iter) break;
    std::vector<double> next(p.size());
    double sum = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
      next[a] = (1.0 - options.damping) * p[a] + options.damping * eval.output[a];
      if (next[a] < 0.0) next[a] = 0.0;
      sum += next[a];
    }
    for (double& w : next) w /= sum;
    p = Distribution<double>(std::move(next));
  }
  return FixedPointResult{best, best_residual, false, options.max_iter, 1, set_changes};
}

namespace detail {

inline Distribution<double> random_simplex_point(std::size_t k, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp_dist(1.0);
  std::vector<double> w(k);
  double sum = 0.0;
  for (double& x : w) {
    x = exp_dist(rng);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return Distribution<double>(std::move(w));
}

}  // namespace detail

// Start points: simplex vertices (projected onto the feasible set by a line
// search toward the barycenter of feasible samples) plus random feasible
// points. Runs find_fixed_point from each until one converges.
inline FixedPointResult find_fixed_point_multistart(const Game<double>& game,
                                                    const FeasibleSet<double>& feasible,
                                                    const FixedPointOptions& options = {}) {
  if (!feasible.convex() || !feasible.closed()) {
    throw CapabilityError("fixed-point search needs a convex closed feasible set");
  }
  const std::size_t k = game.num_profiles();
  std::mt19937_64 rng(options.seed);

  std::vector<Distribution<double>> samples;
  std::vector<Distribution<double>> random_feasible;
  for (std::size_t a = 0; a < k; ++a) {
    Distribution<double> v = Distribution<double>::point_mass(k, a);
    if (feasible.contains(v)) samples.push_back(v);
  }
  {
    Distribution<double> u = Distribution<double>::uniform(k);
    if (feasible.contains(u)) samples.push_back(u);
  }
  for (int t = 0; t < 512; ++t) {
    Distribution<double> x = detail::random_simplex_point(k, rng);
    if (feasible.contains(x)) {
      samples.push_back(x);
      if (random_feasible.size() < static_cast<std::size_t>(options.starts)) {
        random_feasible.push_back(std::move(x));
      }
    }
  }
  if (samples.empty()) {
    throw InputError("found no feasible start point");
  }
  std::vector<double> bary(k, 0.0);
  for (const auto& s : samples) {
    for (std::size_t a = 0; a < k; ++a) bary[a] += s[a];
  }
  double bsum = 0.0;
  for (double& x : bary) bsum += x;
  for (double& x : bary) x /= bsum;
  Distribution<double> barycenter(std::move(bary));
  if (!feasible.contains(barycenter)) barycenter = samples.front();

  std::vector<Distribution<double>> starts;
  for (std::size_t a = 0; a < k && starts.size() < static_cast<std::size_t>(options.starts);
       ++a) {
    Distribution<double> v = Distribution<double>::point_mass(k, a);
    if (feasible.contains(v)) {
      starts.push_back(std::move(v));
      continue;
    }
    // Line search toward the barycenter: find the first feasible point.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      double mid = (lo + hi) / 2.0;
      std::vector<double> w(k);
      for (std::size_t b = 0; b < k; ++b) {
        w[b] = (1.0 - mid) * v[b] + mid * barycenter[b];
      }
      if (feasible.contains(Distribution<double>(std::move(w)))) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    std::vector<double> w(k);
    for (std::size_t b = 0; b < k; ++b) {
      w[b] = (1.0 - hi) * v[b] + hi * barycenter[b];
    }
    Distribution<double> projected(std::move(w));
    if (feasible.contains(projected)) starts.push_back(std::move(projected));
  }
  for (auto& x : random_feasible) {
    if (starts.size() >= static_cast<std::size_t>(options.starts)) break;
    starts.push_back(std::move(x));
  }

  // Starts are independent; run them in parallel and keep the selection
  // deterministic: the first converged start in start order wins.
  const int threads = detail::resolve_threads(0);
  std::vector<FixedPointResult> results;
  results.reserve(starts.size());
  if (threads <= 1 || starts.size() <= 1) {
    for (const auto& start : starts) {
      results.push_back(find_fixed_point(game, feasible, start, options));
      if (results.back().converged) break;  // later starts cannot be selected
    }
  } else {
    results.assign(starts.size(),
                   FixedPointResult{Distribution<double>::uniform(k), -1.0, false, 0, 0, 0});
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<std::size_t> cursor{0};
    const int workers = static_cast<int>(
        std::min(static_cast<std::size_t>(threads), starts.size()));
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&]() {
        try {
          for (std::size_t s = cursor.fetch_add(1); s < starts.size();
               s = cursor.fetch_add(1)) {
            results[s] = find_fixed_point(game, feasible, starts[s], options);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  FixedPointResult best{Distribution<double>::uniform(k), -1.0, false, 0, 0, 0};
  for (std::size_t s = 0; s < results.size(); ++s) {
    if (results[s].converged) {
      results[s].starts_used = static_cast<int>(s + 1);
      return results[s];
    }
    if (best.residual < 0.0 || results[s].residual < best.residual) {
      best = results[s];
    }
  }
  best.starts_used = static_cast<int>(results.size());
  return best;
}

}  // namespace correq

#endif  // CORREQ_FIXEDPOINT_HPP_
