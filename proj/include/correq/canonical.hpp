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

#ifndef CORREQ_CANONICAL_HPP_
#define CORREQ_CANONICAL_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "correq/constraints.hpp"
#include "correq/equilibrium.hpp"
#include "correq/errors.hpp"
#include "correq/game_core.hpp"
#include "correq/rational.hpp"

namespace correq {

// Relabeling of one player's own actions.
struct DeviationMap {
  int player;
  std::vector<int> table;  // action -> action

  bool is_identity() const {
    for (std::size_t a = 0; a < table.size(); ++a) {
      if (table[a] != static_cast<int>(a)) return false;
    }
    return true;
  }
};

inline std::string render_deviation_map(const std::vector<std::string>& action_labels,
                                        const DeviationMap& beta) {
  std::string out;
  for (std::size_t a = 0; a < beta.table.size(); ++a) {
    if (a > 0) out += ',';
    out += action_labels[a] + "->" + action_labels[beta.table[a]];
  }
  return out;
}

// All |A_i|^|A_i| self-maps of a player's action set, in lexicographic order
// over their tables.
template <class S>
std::vector<DeviationMap> all_deviation_maps(const Game<S>& game, int player) {
  const int actions = game.num_actions(player);
  std::vector<DeviationMap> maps;
  std::vector<int> table(actions, 0);
  while (true) {
    maps.push_back(DeviationMap{player, table});
    int pos = actions - 1;
    while (pos >= 0 && table[pos] == actions - 1) {
      table[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++table[pos];
  }
  return maps;
}

// Pushforward of p under relabeling of coordinate i by beta.
template <class S>
Distribution<S> z_transform(const Game<S>& game, const Distribution<S>& p,
                            const DeviationMap& beta) {
  if (p.size() != game.num_profiles()) {
    throw InputError("distribution size does not match profile space");
  }
  if (static_cast<int>(beta.table.size()) != game.num_actions(beta.player)) {
    throw InputError("deviation map does not cover the action set");
  }
  const int actions = game.num_actions(beta.player);
  for (int image : beta.table) {
    if (image < 0 || image >= actions) {
      throw InputError("deviation map assigns an out-of-range action");
    }
  }
  std::vector<S> w(game.num_profiles(), scalar_traits<S>::zero());
  const std::size_t stride = game.stride(beta.player);
  for (std::size_t a = 0; a < p.size(); ++a) {
    const int own = static_cast<int>((a / stride) % actions);
    const long long delta =
        static_cast<long long>(beta.table[own] - own) * static_cast<long long>(stride);
    w[static_cast<std::size_t>(static_cast<long long>(a) + delta)] += p[a];
  }
  return Distribution<S>(std::move(w));
}

// Expected utility of the deviating player after relabeling, computed without
// materializing the pushforward.
template <class S>
S expected_utility_after_deviation(const Game<S>& game, const Distribution<S>& p,
                                   const DeviationMap& beta) {
  if (p.size() != game.num_profiles()) {
    throw InputError("distribution size does not match profile space");
  }
  const int actions = game.num_actions(beta.player);
  if (static_cast<int>(beta.table.size()) != actions) {
    throw InputError("deviation map does not cover the action set");
  }
  const std::size_t stride = game.stride(beta.player);
  S total = scalar_traits<S>::zero();
  for (std::size_t a = 0; a < p.size(); ++a) {
    const int own = static_cast<int>((a / stride) % actions);
    const long long delta =
        static_cast<long long>(beta.table.at(own) - own) * static_cast<long long>(stride);
    const std::size_t target = static_cast<std::size_t>(static_cast<long long>(a) + delta);
    total += p[a] * game.utility_at(beta.player, target);
  }
  return total;
}

// Membership test for the set of constrained correlated equilibrium
// distributions: p is feasible and no feasible relabeling of any player's
// recommendations improves that player.
template <class S>
EquilibriumReport<S> is_cce_distribution(const Game<S>& game, const Distribution<S>& p,
                                         const FeasibleSet<S>& feasible) {
  if (p.size() != game.num_profiles()) {
    throw InputError("distribution size does not match profile space");
  }
  EquilibriumReport<S> report;
  if (!feasible.contains(p)) {
    report.mark_infeasible();
    return report;
  }
  for (int i = 0; i < game.num_players(); ++i) {
    const S here = expected_utility(game, p, i);
    for (const auto& beta : all_deviation_maps(game, i)) {
      if (beta.is_identity()) continue;  // zero margin by construction
      if (!feasible.contains(z_transform(game, p, beta))) continue;
      S margin = here - expected_utility_after_deviation(game, p, beta);
      report.record(margin, i, render_deviation_map(game.actions()[i], beta));
    }
  }
  return report;
}

struct LipschitzWitness {
  double lhs;    // ||z(p) - z(p')||_2
  double bound;  // |A_i| sqrt(|A|) ||p - p'||_2
};

template <class S>
LipschitzWitness lipschitz_witness(const Game<S>& game, int player,
                                   const DeviationMap& beta, const Distribution<S>& p,
                                   const Distribution<S>& p_prime) {
  if (beta.player != player) throw InputError("deviation map belongs to another player");
  Distribution<S> zp = z_transform(game, p, beta);
  Distribution<S> zq = z_transform(game, p_prime, beta);
  double lhs_sq = 0.0;
  double dist_sq = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    double dz = scalar_traits<S>::to_double(zp[a] - zq[a]);
    double dp = scalar_traits<S>::to_double(p[a] - p_prime[a]);
    lhs_sq += dz * dz;
    dist_sq += dp * dp;
  }
  double constant = static_cast<double>(game.num_actions(player)) *
                    std::sqrt(static_cast<double>(game.num_profiles()));
  return LipschitzWitness{std::sqrt(lhs_sq), constant * std::sqrt(dist_sq)};
}

}  // namespace correq

#endif  // CORREQ_CANONICAL_HPP_
