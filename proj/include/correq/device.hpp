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

#ifndef CORREQ_DEVICE_HPP_
#define CORREQ_DEVICE_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "correq/errors.hpp"
#include "correq/game_core.hpp"
#include "correq/rational.hpp"

namespace correq {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// A finite outcome space, one information partition per player, and a common
// prior over outcomes. Partition cells are stored as sorted outcome-index
// lists; cell identity is the position after sorting cells by their minimum
// element.
template <class S>
class CorrelationDevice {
 public:
  CorrelationDevice(std::vector<std::string> outcomes,
                    std::vector<std::vector<std::vector<int>>> partitions,
                    std::vector<S> q)
      : outcomes_(std::move(outcomes)),
        partitions_(std::move(partitions)),
        q_(std::move(q)) {
    const int n_outcomes = static_cast<int>(outcomes_.size());
    if (n_outcomes == 0) throw InputError("device needs at least one outcome");
    if (q_.size() != outcomes_.size()) {
      throw InputError("prior length does not match outcome count");
    }
    S sum = scalar_traits<S>::zero();
    for (const S& w : q_) {
      if (w < -scalar_traits<S>::sum_eps()) throw InputError("negative prior weight");
      sum += w;
    }
    if (scalar_traits<S>::abs(sum - scalar_traits<S>::one()) >
        scalar_traits<S>::sum_eps()) {
      throw InputError("prior does not sum to one");
    }
    cell_of_.resize(partitions_.size());
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
      auto& cells = partitions_[i];
      for (auto& cell : cells) {
        if (cell.empty()) throw InputError("empty partition cell");
        std::sort(cell.begin(), cell.end());
      }
      std::sort(cells.begin(), cells.end(),
                [](const auto& a, const auto& b) { return a.front() < b.front(); });
      std::vector<int> owner(n_outcomes, -1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        for (int w : cells[c]) {
          if (w < 0 || w >= n_outcomes) throw InputError("outcome index out of range");
          if (owner[w] != -1) throw InputError("partition cells overlap");
          owner[w] = static_cast<int>(c);
        }
      }
      for (int w = 0; w < n_outcomes; ++w) {
        if (owner[w] == -1) throw InputError("partition does not cover all outcomes");
      }
      cell_of_[i] = std::move(owner);
    }
  }

  int num_outcomes() const { return static_cast<int>(outcomes_.size()); }
  int num_players() const { return static_cast<int>(partitions_.size()); }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<S>& q() const { return q_; }
  const std::vector<std::vector<int>>& partition(int player) const {
    return partitions_.at(player);
  }
  int num_cells(int player) const {
    return static_cast<int>(partitions_.at(player).size());
  }
  int cell_of(int player, int outcome) const {
    return cell_of_.at(player).at(outcome);
  }

 private:
  std::vector<std::string> outcomes_;
  std::vector<std::vector<std::vector<int>>> partitions_;
  std::vector<S> q_;
  std::vector<std::vector<int>> cell_of_;
};

// Outcome -> action map for one player.
using MeasurableStrategy = std::vector<int>;
// One measurable strategy per player.
using CorrelatedProfile = std::vector<MeasurableStrategy>;

// Outcome -> probability vector over the player's actions, per player.
template <class S>
struct MixedCorrelatedProfile {
  std::vector<std::vector<std::vector<S>>> probs;  // [player][outcome][action]
};

template <class S>
bool is_measurable(const CorrelationDevice<S>& device, int player,
                   const MeasurableStrategy& strategy) {
  if (static_cast<int>(strategy.size()) != device.num_outcomes()) return false;
  for (const auto& cell : device.partition(player)) {
    for (int w : cell) {
      if (strategy[w] != strategy[cell.front()]) return false;
    }
  }
  return true;
}

template <class S>
void validate_profile(const CorrelationDevice<S>& device, const Game<S>& game,
                      const CorrelatedProfile& profile) {
  if (static_cast<int>(profile.size()) != game.num_players() ||
      device.num_players() != game.num_players()) {
    throw InputError("profile must cover every player of the device and game");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    for (int action : profile[i]) {
      if (action < 0 || action >= game.num_actions(i)) {
        throw InputError("profile assigns an out-of-range action");
      }
    }
    if (!is_measurable(device, i, profile[i])) {
      throw InputError("profile is not measurable w.r.t. the player's partition");
    }
  }
}

template <class S>
MeasurableStrategy strategy_from_cells(const CorrelationDevice<S>& device, int player,
                                       const std::vector<int>& cell_actions) {
  if (static_cast<int>(cell_actions.size()) != device.num_cells(player)) {
    throw InputError("one action per cell required");
  }
  MeasurableStrategy strategy(device.num_outcomes());
  for (int w = 0; w < device.num_outcomes(); ++w) {
    strategy[w] = cell_actions[device.cell_of(player, w)];
  }
  return strategy;
}

// |A_i|^cells, saturating at the maximum representable size.
template <class S>
std::size_t strategy_count(const CorrelationDevice<S>& device, const Game<S>& game,
                           int player) {
  constexpr std::size_t kMax = static_cast<std::size_t>(-1);
  std::size_t count = 1;
  const std::size_t base = static_cast<std::size_t>(game.num_actions(player));
  for (int c = 0; c < device.num_cells(player); ++c) {
    if (base > 1 && count > kMax / base) return kMax;
    count *= base;
  }
  return count;
}

// All partition-measurable maps for one player, in lexicographic order over
// the vector of per-cell action indices.
template <class S>
std::vector<MeasurableStrategy> enumerate_strategies(
    const CorrelationDevice<S>& device, const Game<S>& game, int player,
    std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t count = strategy_count(device, game, player);
  if (count > cap) {
    throw ResourceError("strategy enumeration exceeds cap");
  }
  const int cells = device.num_cells(player);
  const int actions = game.num_actions(player);
  std::vector<MeasurableStrategy> result;
  result.reserve(count);
  std::vector<int> assignment(cells, 0);
  while (true) {
    result.push_back(strategy_from_cells(device, player, assignment));
    int pos = cells - 1;
    while (pos >= 0 && assignment[pos] == actions - 1) {
      assignment[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++assignment[pos];
  }
  return result;
}

// Position of a measurable strategy in the enumeration order above.
template <class S>
std::size_t strategy_index(const CorrelationDevice<S>& device, const Game<S>& game,
                           int player, const MeasurableStrategy& strategy) {
  if (!is_measurable(device, player, strategy)) {
    throw InputError("strategy is not measurable");
  }
  const int actions = game.num_actions(player);
  std::size_t idx = 0;
  for (const auto& cell : device.partition(player)) {
    idx = idx * actions + static_cast<std::size_t>(strategy[cell.front()]);
  }
  return idx;
}

// Normal-form game whose per-player action set is the enumerated list of
// measurable strategies, with payoffs averaged under the prior.
template <class S>
struct ExtendedGame {
  Game<S> game;  // strategies as actions, labels "s1", "s2", ...
  Game<S> base;
  CorrelationDevice<S> device;
  std::vector<std::vector<MeasurableStrategy>> strategies;  // [player][index]
};

template <class S>
Distribution<S> profile_distribution(const Game<S>& game,
                                     const CorrelationDevice<S>& device,
                                     const CorrelatedProfile& profile) {
  validate_profile(device, game, profile);
  std::vector<S> w(game.num_profiles(), scalar_traits<S>::zero());
  ActionProfile a(game.num_players());
  for (int omega = 0; omega < device.num_outcomes(); ++omega) {
    for (int i = 0; i < game.num_players(); ++i) a[i] = profile[i][omega];
    w[game.profile_index(a)] += device.q()[omega];
  }
  return Distribution<S>(std::move(w));
}

template <class S>
ExtendedGame<S> extend(const Game<S>& game, const CorrelationDevice<S>& device,
                       std::size_t cap = kDefaultEnumerationCap) {
  if (device.num_players() != game.num_players()) {
    throw InputError("device and game disagree on the player count");
  }
  std::vector<std::vector<MeasurableStrategy>> strategies;
  std::size_t joint = 1;
  for (int i = 0; i < game.num_players(); ++i) {
    strategies.push_back(enumerate_strategies(device, game, i, cap));
    const std::size_t count = strategies.back().size();
    if (joint > cap / count) throw ResourceError("joint strategy space exceeds cap");
    joint *= count;
  }

  std::vector<std::vector<std::string>> labels(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    for (std::size_t s = 0; s < strategies[i].size(); ++s) {
      labels[i].push_back("s" + std::to_string(s + 1));
    }
  }
  std::vector<std::vector<S>> payoffs(joint);
  std::vector<std::size_t> strides(game.num_players(), 1);
  for (int i = game.num_players() - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * strategies[i + 1].size();
  }
  ActionProfile a(game.num_players());
  for (std::size_t idx = 0; idx < joint; ++idx) {
    std::vector<S> u(game.num_players(), scalar_traits<S>::zero());
    std::size_t rest = idx;
    std::vector<std::size_t> pick(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
      pick[i] = rest / strides[i];
      rest %= strides[i];
    }
    for (int omega = 0; omega < device.num_outcomes(); ++omega) {
      for (int i = 0; i < game.num_players(); ++i) a[i] = strategies[i][pick[i]][omega];
      const auto& base_u = game.utility(a);
      for (int i = 0; i < game.num_players(); ++i) u[i] += device.q()[omega] * base_u[i];
    }
    payoffs[idx] = std::move(u);
  }
  Game<S> extended(game.players(), std::move(labels), std::move(payoffs));
  return ExtendedGame<S>{std::move(extended), game, device, std::move(strategies)};
}

// Canonical device of a distribution: outcomes are the action profiles, each
// player's partition reveals only her own coordinate, the prior is p itself.
template <class S>
CorrelationDevice<S> canonical_device(const Game<S>& game, const Distribution<S>& p) {
  if (p.size() != game.num_profiles()) {
    throw InputError("distribution size does not match profile space");
  }
  std::vector<std::string> outcomes;
  outcomes.reserve(game.num_profiles());
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    outcomes.push_back(game.profile_label(a));
  }
  std::vector<std::vector<std::vector<int>>> partitions(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    partitions[i].resize(game.num_actions(i));
    for (std::size_t a = 0; a < game.num_profiles(); ++a) {
      partitions[i][game.profile_at(a)[i]].push_back(static_cast<int>(a));
    }
  }
  return CorrelationDevice<S>(std::move(outcomes), std::move(partitions), p.weights());
}

// The profile that plays the recommended coordinate of a canonical device.
template <class S>
CorrelatedProfile identity_profile(const Game<S>& game) {
  CorrelatedProfile profile(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    profile[i].resize(game.num_profiles());
    for (std::size_t a = 0; a < game.num_profiles(); ++a) {
      profile[i][a] = game.profile_at(a)[i];
    }
  }
  return profile;
}

template <class S>
void validate_mixed_correlated_profile(const CorrelationDevice<S>& device,
                                       const Game<S>& game,
                                       const MixedCorrelatedProfile<S>& gamma) {
  if (static_cast<int>(gamma.probs.size()) != game.num_players()) {
    throw InputError("mixed correlated profile must cover every player");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    const auto& per_outcome = gamma.probs[i];
    if (static_cast<int>(per_outcome.size()) != device.num_outcomes()) {
      throw InputError("mixed correlated strategy must cover every outcome");
    }
    for (const auto& dist : per_outcome) {
      if (static_cast<int>(dist.size()) != game.num_actions(i)) {
        throw InputError("mixed action vector has wrong length");
      }
      S sum = scalar_traits<S>::zero();
      for (const S& w : dist) {
        if (w < -scalar_traits<S>::sum_eps()) throw InputError("negative probability");
        sum += w;
      }
      if (scalar_traits<S>::abs(sum - scalar_traits<S>::one()) >
          scalar_traits<S>::sum_eps()) {
        throw InputError("mixed action vector does not sum to one");
      }
    }
    for (const auto& cell : device.partition(i)) {
      for (int w : cell) {
        if (per_outcome[w] != per_outcome[cell.front()]) {
          throw InputError("mixed strategy is not measurable");
        }
      }
    }
  }
}

// Distribution over action profiles induced by per-outcome independent
// randomizations.
template <class S>
Distribution<S> induced_distribution(const Game<S>& game,
                                     const CorrelationDevice<S>& device,
                                     const MixedCorrelatedProfile<S>& gamma) {
  validate_mixed_correlated_profile(device, game, gamma);
  std::vector<S> w(game.num_profiles(), scalar_traits<S>::zero());
  for (int omega = 0; omega < device.num_outcomes(); ++omega) {
    for (std::size_t a = 0; a < game.num_profiles(); ++a) {
      ActionProfile profile = game.profile_at(a);
      S prob = device.q()[omega];
      for (int i = 0; i < game.num_players(); ++i) {
        prob *= gamma.probs[i][omega][profile[i]];
      }
      w[a] += prob;
    }
  }
  return Distribution<S>(std::move(w));
}

// Replaces per-outcome randomization by a canonical device whose prior is the
// induced distribution, paired with the identity profile. The profile
// distribution of the result equals the induced distribution of the input.
template <class S>
std::pair<CorrelationDevice<S>, CorrelatedProfile> derandomize(
    const Game<S>& game, const CorrelationDevice<S>& device,
    const MixedCorrelatedProfile<S>& gamma) {
  Distribution<S> induced = induced_distribution(game, device, gamma);
  return {canonical_device(game, induced), identity_profile(game)};
}

// Lifts a deviation of the derandomized profile back onto the original
// device: the lifted strategy plays, at outcome omega, the image under the
// canonical deviation of an action drawn from gamma_i(omega). The canonical
// deviation must be measurable w.r.t. the canonical partition, so it is
// evaluated at an arbitrary representative profile of each cell.
template <class S>
std::vector<std::vector<S>> lift_deviation(const Game<S>& game,
                                           const CorrelationDevice<S>& device,
                                           const MixedCorrelatedProfile<S>& gamma,
                                           int player,
                                           const MeasurableStrategy& canonical_deviation) {
  validate_mixed_correlated_profile(device, game, gamma);
  if (canonical_deviation.size() != game.num_profiles()) {
    throw InputError("canonical deviation must map every action profile");
  }
  // Representative of the cell {a : a_i = b}: the profile with every other
  // coordinate at action 0, whose index is b * stride(i).
  const int actions = game.num_actions(player);
  std::vector<int> image(actions);
  for (int b = 0; b < actions; ++b) {
    image[b] = canonical_deviation[static_cast<std::size_t>(b) * game.stride(player)];
    if (image[b] < 0 || image[b] >= actions) {
      throw InputError("canonical deviation assigns an out-of-range action");
    }
  }
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    if (canonical_deviation[a] != image[game.profile_at(a)[player]]) {
      throw InputError("canonical deviation must depend only on the own coordinate");
    }
  }
  std::vector<std::vector<S>> lifted(device.num_outcomes(),
                                     std::vector<S>(actions, scalar_traits<S>::zero()));
  for (int omega = 0; omega < device.num_outcomes(); ++omega) {
    for (int b = 0; b < actions; ++b) {
      lifted[omega][image[b]] += gamma.probs[player][omega][b];
    }
  }
  return lifted;
}

}  // namespace correq

#endif  // CORREQ_DEVICE_HPP_
