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

#ifndef CORREQ_GAME_CORE_HPP_
#define CORREQ_GAME_CORE_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "correq/errors.hpp"
#include "correq/rational.hpp"

namespace correq {

// One action index per player.
using ActionProfile = std::vector<int>;

// Finite normal-form game. Payoffs are stored per joint action profile in
// row-major order over the per-player action lists (the first player's index
// varies slowest), one utility vector per profile.
template <class S>
class Game {
 public:
  Game(std::vector<std::string> players,
       std::vector<std::vector<std::string>> actions,
       std::vector<std::vector<S>> payoffs)
      : players_(std::move(players)),
        actions_(std::move(actions)),
        payoffs_(std::move(payoffs)) {
    if (players_.empty()) throw InputError("game needs at least one player");
    if (actions_.size() != players_.size()) {
      throw InputError("one action list per player required");
    }
    check_unique(players_, "player");
    std::size_t profiles = 1;
    for (const auto& acts : actions_) {
      if (acts.empty()) throw InputError("every player needs at least one action");
      check_unique(acts, "action");
      profiles *= acts.size();
    }
    if (payoffs_.size() != profiles) {
      throw InputError("payoff tensor must have one entry per joint profile");
    }
    for (const auto& u : payoffs_) {
      if (u.size() != players_.size()) {
        throw InputError("every payoff entry must list one utility per player");
      }
    }
    strides_.assign(players_.size(), 1);
    for (int i = static_cast<int>(players_.size()) - 2; i >= 0; --i) {
      strides_[i] = strides_[i + 1] * actions_[i + 1].size();
    }
  }

  int num_players() const { return static_cast<int>(players_.size()); }
  int num_actions(int player) const {
    return static_cast<int>(actions_.at(player).size());
  }
  std::size_t num_profiles() const { return payoffs_.size(); }
  const std::vector<std::string>& players() const { return players_; }
  const std::vector<std::vector<std::string>>& actions() const { return actions_; }

  std::size_t profile_index(const ActionProfile& profile) const {
    if (profile.size() != players_.size()) {
      throw InputError("profile length does not match player count");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (profile[i] < 0 || profile[i] >= static_cast<int>(actions_[i].size())) {
        throw InputError("action index out of range in profile");
      }
      idx += static_cast<std::size_t>(profile[i]) * strides_[i];
    }
    return idx;
  }

  ActionProfile profile_at(std::size_t index) const {
    if (index >= num_profiles()) throw InputError("profile index out of range");
    ActionProfile profile(players_.size());
    for (std::size_t i = 0; i < players_.size(); ++i) {
      profile[i] = static_cast<int>(index / strides_[i]);
      index %= strides_[i];
    }
    return profile;
  }

  const std::vector<S>& utility_at(std::size_t index) const {
    if (index >= num_profiles()) throw InputError("profile index out of range");
    return payoffs_[index];
  }
  const std::vector<S>& utility(const ActionProfile& profile) const {
    return payoffs_[profile_index(profile)];
  }
  S utility_at(int player, std::size_t index) const {
    return utility_at(index).at(player);
  }
  S utility(int player, const ActionProfile& profile) const {
    return payoffs_[profile_index(profile)].at(player);
  }

  // Human-readable profile label, e.g. "P.A".
  std::string profile_label(std::size_t index) const {
    ActionProfile p = profile_at(index);
    std::string label;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i > 0) label += '.';
      label += actions_[i][p[i]];
    }
    return label;
  }

  std::size_t stride(int player) const { return strides_.at(player); }

 private:
  static void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
      throw InputError(std::string(what) + " labels must be unique");
    }
  }

  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::vector<S>> payoffs_;
  std::vector<std::size_t> strides_;
};

// Probability vector over joint action profiles (a point of the simplex).
template <class S>
class Distribution {
 public:
  explicit Distribution(std::vector<S> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InputError("empty distribution");
    S sum = scalar_traits<S>::zero();
    for (const S& w : weights_) {
      if (w < -scalar_traits<S>::sum_eps()) {
        throw InputError("negative probability weight");
      }
      sum += w;
    }
    S err = scalar_traits<S>::abs(sum - scalar_traits<S>::one());
    if (err > scalar_traits<S>::sum_eps()) {
      throw InputError("probability weights do not sum to one");
    }
  }

  static Distribution point_mass(std::size_t size, std::size_t index) {
    std::vector<S> w(size, scalar_traits<S>::zero());
    w.at(index) = scalar_traits<S>::one();
    return Distribution(std::move(w));
  }

  static Distribution uniform(std::size_t size) {
    std::vector<S> w(size, scalar_traits<S>::from_ratio(1, static_cast<long long>(size)));
    return Distribution(std::move(w));
  }

  std::size_t size() const { return weights_.size(); }
  const S& operator[](std::size_t i) const { return weights_.at(i); }
  const std::vector<S>& weights() const { return weights_; }

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.weights_ == b.weights_;
  }

 private:
  std::vector<S> weights_;
};

// One probability vector per player over that player's own actions.
template <class S>
struct MixedProfile {
  std::vector<std::vector<S>> probs;
};

template <class S>
void validate_mixed_profile(const Game<S>& game, const MixedProfile<S>& mixed) {
  if (static_cast<int>(mixed.probs.size()) != game.num_players()) {
    throw InputError("mixed profile must cover every player");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    const auto& p = mixed.probs[i];
    if (static_cast<int>(p.size()) != game.num_actions(i)) {
      throw InputError("mixed strategy length does not match action count");
    }
    S sum = scalar_traits<S>::zero();
    for (const S& w : p) {
      if (w < -scalar_traits<S>::sum_eps()) throw InputError("negative probability");
      sum += w;
    }
    if (scalar_traits<S>::abs(sum - scalar_traits<S>::one()) >
        scalar_traits<S>::sum_eps()) {
      throw InputError("mixed strategy does not sum to one");
    }
  }
}

template <class S>
std::vector<S> expected_utility(const Game<S>& game, const Distribution<S>& dist) {
  if (dist.size() != game.num_profiles()) {
    throw InputError("distribution size does not match profile space");
  }
  std::vector<S> total(game.num_players(), scalar_traits<S>::zero());
  for (std::size_t a = 0; a < dist.size(); ++a) {
    const auto& u = game.utility_at(a);
    for (int i = 0; i < game.num_players(); ++i) total[i] += dist[a] * u[i];
  }
  return total;
}

template <class S>
S expected_utility(const Game<S>& game, const Distribution<S>& dist, int player) {
  if (dist.size() != game.num_profiles()) {
    throw InputError("distribution size does not match profile space");
  }
  S total = scalar_traits<S>::zero();
  for (std::size_t a = 0; a < dist.size(); ++a) {
    total += dist[a] * game.utility_at(player, a);
  }
  return total;
}

template <class S>
S social_welfare(const Game<S>& game, const Distribution<S>& dist) {
  std::vector<S> u = expected_utility(game, dist);
  S total = scalar_traits<S>::zero();
  for (const S& v : u) total += v;
  return total;
}

// Joint distribution of independent per-player randomizations.
template <class S>
Distribution<S> product_distribution(const Game<S>& game, const MixedProfile<S>& mixed) {
  validate_mixed_profile(game, mixed);
  std::vector<S> w(game.num_profiles(), scalar_traits<S>::zero());
  for (std::size_t a = 0; a < w.size(); ++a) {
    ActionProfile profile = game.profile_at(a);
    S prob = scalar_traits<S>::one();
    for (int i = 0; i < game.num_players(); ++i) prob *= mixed.probs[i][profile[i]];
    w[a] = prob;
  }
  return Distribution<S>(std::move(w));
}

// Profiles stable against unilateral pure deviations (weak inequalities),
// sorted lexicographically by action indices.
template <class S>
std::vector<ActionProfile> pure_nash_equilibria(const Game<S>& game) {
  std::vector<ActionProfile> result;
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    ActionProfile profile = game.profile_at(idx);
    bool stable = true;
    for (int i = 0; i < game.num_players() && stable; ++i) {
      S here = game.utility_at(i, idx);
      ActionProfile alt = profile;
      for (int b = 0; b < game.num_actions(i) && stable; ++b) {
        if (b == profile[i]) continue;
        alt[i] = b;
        if (!weakly_nonnegative(here - game.utility(i, alt))) stable = false;
      }
    }
    if (stable) result.push_back(std::move(profile));
  }
  return result;
}

}  // namespace correq

#endif  // CORREQ_GAME_CORE_HPP_
