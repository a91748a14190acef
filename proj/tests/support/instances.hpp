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

#ifndef CORREQ_TESTS_SUPPORT_INSTANCES_HPP_
#define CORREQ_TESTS_SUPPORT_INSTANCES_HPP_

#include <random>
#include <string>
#include <vector>

#include "correq/canonical.hpp"
#include "correq/constraints.hpp"
#include "correq/device.hpp"
#include "correq/game_core.hpp"
#include "correq/rational.hpp"

namespace correq::testing {

using GameQ = Game<Rational>;
using DeviceQ = CorrelationDevice<Rational>;
using DistQ = Distribution<Rational>;
using SetQ = FeasibleSet<Rational>;

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  int uniform(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(engine);
  }
  bool coin() { return uniform(0, 1) == 1; }
};

// --- canonical fixtures -----------------------------------------------------

inline GameQ chicken() {
  return GameQ({"row", "col"}, {{"P", "A"}, {"P", "A"}},
               {{8, 8}, {3, 10}, {10, 3}, {0, 0}});
}

// Three equally likely outcomes; the row player only sees whether the outcome
// is H, the column player only whether it is L.
inline DeviceQ chicken_device() {
  return DeviceQ({"H", "M", "L"}, {{{0}, {1, 2}}, {{0, 1}, {2}}},
                 {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
}

inline GameQ intersection_game() {
  return GameQ({"driver1", "driver2"}, {{"Wait", "Go"}, {"Wait", "Go"}},
               {{0, 0}, {0, 1}, {1, 0}, {-1, -1}});
}

inline DeviceQ traffic_lights_device() {
  return DeviceQ({"rg", "gr"}, {{{0}, {1}}, {{0}, {1}}},
                 {Rational(1, 2), Rational(1, 2)});
}

inline GameQ no_pure_nash_game() {
  return GameQ({"p1", "p2"}, {{"U", "D"}, {"L", "R"}}, {{2, 2}, {1, 1}, {3, 0}, {0, 5}});
}

inline GameQ mixing_gap_game() {
  return GameQ({"p1", "p2"}, {{"A", "B"}, {"C", "D"}}, {{0, 0}, {1, 2}, {2, 1}, {3, 0}});
}

inline CorrelatedProfile row_col_profile(const std::vector<int>& row,
                                         const std::vector<int>& col) {
  return CorrelatedProfile{row, col};
}

// --- random instances (exact rational mode) ---------------------------------

inline GameQ random_game(Rng& rng, int max_players = 2, int max_actions = 3,
                         int payoff_lo = -5, int payoff_hi = 10) {
  const int players = rng.uniform(2, max_players);
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> actions;
  std::size_t profiles = 1;
  for (int i = 0; i < players; ++i) {
    names.push_back("p" + std::to_string(i + 1));
    const int count = rng.uniform(2, max_actions);
    std::vector<std::string> labels;
    for (int a = 0; a < count; ++a) labels.push_back("a" + std::to_string(a));
    actions.push_back(std::move(labels));
    profiles *= count;
  }
  std::vector<std::vector<Rational>> payoffs(profiles);
  for (auto& u : payoffs) {
    for (int i = 0; i < players; ++i) u.push_back(Rational(rng.uniform(payoff_lo, payoff_hi)));
  }
  return GameQ(std::move(names), std::move(actions), std::move(payoffs));
}

inline std::vector<Rational> random_simplex_weights(Rng& rng, std::size_t k,
                                                    bool allow_zero = true) {
  std::vector<long long> raw(k);
  long long total = 0;
  for (auto& x : raw) {
    x = rng.uniform(allow_zero ? 0 : 1, 6);
    total += x;
  }
  if (total == 0) {
    raw[rng.uniform(0, static_cast<int>(k) - 1)] = 1;
    total = 1;
  }
  std::vector<Rational> w;
  w.reserve(k);
  for (long long x : raw) w.push_back(Rational(x, total));
  return w;
}

inline DistQ random_distribution(Rng& rng, std::size_t k) {
  return DistQ(random_simplex_weights(rng, k));
}

inline DeviceQ random_device(Rng& rng, const GameQ& game, int max_outcomes = 4) {
  const int outcomes = rng.uniform(1, max_outcomes);
  std::vector<std::string> labels;
  for (int w = 0; w < outcomes; ++w) labels.push_back("w" + std::to_string(w));
  std::vector<std::vector<std::vector<int>>> partitions;
  for (int i = 0; i < game.num_players(); ++i) {
    // Random set partition: assign each outcome a block id.
    std::vector<int> block(outcomes);
    int blocks = 0;
    for (int w = 0; w < outcomes; ++w) {
      block[w] = rng.uniform(0, blocks);  // == blocks opens a new block
      if (block[w] == blocks) ++blocks;
    }
    std::vector<std::vector<int>> cells(blocks);
    for (int w = 0; w < outcomes; ++w) cells[block[w]].push_back(w);
    partitions.push_back(std::move(cells));
  }
  return DeviceQ(std::move(labels), std::move(partitions),
                 random_simplex_weights(rng, outcomes));
}

inline MeasurableStrategy random_strategy(Rng& rng, const DeviceQ& device,
                                          const GameQ& game, int player) {
  std::vector<int> per_cell(device.num_cells(player));
  for (auto& a : per_cell) a = rng.uniform(0, game.num_actions(player) - 1);
  return strategy_from_cells(device, player, per_cell);
}

inline CorrelatedProfile random_profile(Rng& rng, const DeviceQ& device, const GameQ& game) {
  CorrelatedProfile profile;
  for (int i = 0; i < game.num_players(); ++i) {
    profile.push_back(random_strategy(rng, device, game, i));
  }
  return profile;
}

inline MixedCorrelatedProfile<Rational> random_mixed_profile(Rng& rng, const DeviceQ& device,
                                                             const GameQ& game) {
  MixedCorrelatedProfile<Rational> gamma;
  gamma.probs.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    gamma.probs[i].resize(device.num_outcomes());
    for (const auto& cell : device.partition(i)) {
      auto w = random_simplex_weights(rng, game.num_actions(i));
      for (int omega : cell) gamma.probs[i][omega] = w;
    }
  }
  return gamma;
}

inline DeviationMap random_deviation_map(Rng& rng, const GameQ& game, int player) {
  DeviationMap beta{player, std::vector<int>(game.num_actions(player))};
  for (auto& a : beta.table) a = rng.uniform(0, game.num_actions(player) - 1);
  return beta;
}

inline Game<double> to_double(const GameQ& game) {
  std::vector<std::vector<double>> payoffs;
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    std::vector<double> u;
    for (int i = 0; i < game.num_players(); ++i) u.push_back(game.utility_at(i, a).to_double());
    payoffs.push_back(std::move(u));
  }
  return Game<double>(game.players(), game.actions(), std::move(payoffs));
}

inline Distribution<double> to_double(const DistQ& p) {
  std::vector<double> w;
  for (std::size_t a = 0; a < p.size(); ++a) w.push_back(p[a].to_double());
  return Distribution<double>(std::move(w));
}

// One of the built-in feasible-set kinds, parameterized at random. With
// `closed_convex_only`, restricts to kinds the fixed-point machinery accepts.
inline SetQ random_feasible_set(Rng& rng, const GameQ& game,
                                bool closed_convex_only = false) {
  const std::size_t k = game.num_profiles();
  const int kind = rng.uniform(0, closed_convex_only ? 2 : 4);
  switch (kind) {
    case 0:
      return SetQ::full(k);
    case 1: {
      // Threshold inside the welfare range so the set is usually nontrivial.
      Rational lo(1000), hi(-1000);
      for (std::size_t a = 0; a < k; ++a) {
        Rational sw(0);
        for (int i = 0; i < game.num_players(); ++i) sw += game.utility_at(i, a);
        if (sw < lo) lo = sw;
        if (sw > hi) hi = sw;
      }
      Rational t = lo + (hi - lo) * Rational(rng.uniform(0, 4), 4);
      return SetQ::sw_floor(game, t);
    }
    case 2: {
      LinearInequality<Rational> row;
      for (std::size_t a = 0; a < k; ++a) row.coeffs.push_back(Rational(rng.uniform(-2, 3)));
      row.rhs = Rational(rng.uniform(-2, 1));
      return SetQ::linear(k, {row});
    }
    case 3: {
      std::vector<std::size_t> zero;
      for (std::size_t a = 0; a < k; ++a) {
        if (rng.uniform(0, 3) == 0) zero.push_back(a);
      }
      return SetQ::support_zero(k, zero);
    }
    default:
      return SetQ::pure_only(k);
  }
}

}  // namespace correq::testing

#endif  // CORREQ_TESTS_SUPPORT_INSTANCES_HPP_
