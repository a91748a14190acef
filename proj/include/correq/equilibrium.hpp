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

#ifndef CORREQ_EQUILIBRIUM_HPP_
#define CORREQ_EQUILIBRIUM_HPP_

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "correq/constraints.hpp"
#include "correq/device.hpp"
#include "correq/errors.hpp"
#include "correq/game_core.hpp"
#include "correq/rational.hpp"

namespace correq {

template <class S>
struct DeviationWitness {
  int player;  // -1 for "profile infeasible"
  std::string deviation;
  S gain;
};

// Outcome of a stability check. Margins list the slack of every checked
// condition in enumeration order; the witness is the first failing deviation.
template <class S>
struct EquilibriumReport {
  bool verdict = true;
  std::vector<DeviationWitness<S>> witnesses;
  std::vector<S> margins;

  void record(const S& margin, int player, const std::string& deviation) {
    margins.push_back(margin);
    if (!weakly_nonnegative(margin)) {
      if (witnesses.empty()) witnesses.push_back({player, deviation, -margin});
      verdict = false;
    }
  }

  void mark_infeasible() {
    verdict = false;
    witnesses.push_back({-1, "infeasible", scalar_traits<S>::zero()});
  }
};

inline std::string render_strategy(const std::vector<std::string>& action_labels,
                                   const MeasurableStrategy& strategy) {
  std::string out;
  for (std::size_t w = 0; w < strategy.size(); ++w) {
    if (w > 0) out += '.';
    out += action_labels[strategy[w]];
  }
  return out;
}

// Coupled constraint set over the joint strategies of an extension: the full
// strategy space, an explicit set of joint strategy indices, or the set
// generated by a feasible set of distributions.
template <class S>
class CoupledConstraintSet {
 public:
  static CoupledConstraintSet all_strategies() { return CoupledConstraintSet(); }

  static CoupledConstraintSet explicit_set(std::vector<std::vector<std::size_t>> joint) {
    CoupledConstraintSet r;
    r.explicit_ = std::set<std::vector<std::size_t>>(joint.begin(), joint.end());
    r.kind_ = Kind::kExplicit;
    return r;
  }

  static CoupledConstraintSet generated_by(FeasibleSet<S> feasible) {
    CoupledConstraintSet r;
    r.generator_ = std::make_shared<FeasibleSet<S>>(std::move(feasible));
    r.kind_ = Kind::kGenerated;
    return r;
  }

  bool is_full() const { return kind_ == Kind::kFull; }
  const FeasibleSet<S>* generator() const { return generator_.get(); }

  bool contains(const Game<S>& game, const CorrelationDevice<S>& device,
                const CorrelatedProfile& profile) const {
    switch (kind_) {
      case Kind::kFull:
        return true;
      case Kind::kGenerated:
        return generator_->contains(profile_distribution(game, device, profile));
      case Kind::kExplicit: {
        std::vector<std::size_t> idx(profile.size());
        for (std::size_t i = 0; i < profile.size(); ++i) {
          idx[i] = strategy_index(device, game, static_cast<int>(i), profile[i]);
        }
        return explicit_.count(idx) > 0;
      }
    }
    return false;
  }

  bool contains_indices(const ExtendedGame<S>& ext,
                        const std::vector<std::size_t>& indices) const {
    switch (kind_) {
      case Kind::kFull:
        return true;
      case Kind::kExplicit:
        return explicit_.count(indices) > 0;
      case Kind::kGenerated: {
        CorrelatedProfile profile(indices.size());
        for (std::size_t i = 0; i < indices.size(); ++i) {
          profile[i] = ext.strategies[i].at(indices[i]);
        }
        return generator_->contains(profile_distribution(ext.base, ext.device, profile));
      }
    }
    return false;
  }

 private:
  enum class Kind { kFull, kExplicit, kGenerated };
  CoupledConstraintSet() = default;

  Kind kind_ = Kind::kFull;
  std::set<std::vector<std::size_t>> explicit_;
  std::shared_ptr<FeasibleSet<S>> generator_;
};

namespace detail {

// Expected payoff of one player when she plays `strategy` against the rest of
// `profile` under the device prior.
template <class S>
S payoff_against(const Game<S>& game, const CorrelationDevice<S>& device,
                 const CorrelatedProfile& profile, int player,
                 const MeasurableStrategy& strategy) {
  S total = scalar_traits<S>::zero();
  ActionProfile a(game.num_players());
  for (int omega = 0; omega < device.num_outcomes(); ++omega) {
    for (int j = 0; j < game.num_players(); ++j) a[j] = profile[j][omega];
    a[player] = strategy[omega];
    total += device.q()[omega] * game.utility(player, a);
  }
  return total;
}

}  // namespace detail

// Nash stability of a correlated strategy profile in the extension: no player
// gains by switching to any other measurable strategy.
template <class S>
EquilibriumReport<S> is_correlated_equilibrium(const Game<S>& game,
                                               const CorrelationDevice<S>& device,
                                               const CorrelatedProfile& profile,
                                               std::size_t cap = kDefaultEnumerationCap) {
  validate_profile(device, game, profile);
  EquilibriumReport<S> report;
  for (int i = 0; i < game.num_players(); ++i) {
    const S here = detail::payoff_against(game, device, profile, i, profile[i]);
    for (const auto& deviation : enumerate_strategies(device, game, i, cap)) {
      if (deviation == profile[i]) continue;
      S margin = here - detail::payoff_against(game, device, profile, i, deviation);
      report.record(margin, i, render_strategy(game.actions()[i], deviation));
    }
  }
  return report;
}

// Equivalent per-cell stability conditions: for every player, cell, and
// action, staying with the recommendation is weakly better on that cell.
template <class S>
EquilibriumReport<S> ex_post_check(const Game<S>& game,
                                   const CorrelationDevice<S>& device,
                                   const CorrelatedProfile& profile) {
  validate_profile(device, game, profile);
  EquilibriumReport<S> report;
  ActionProfile a(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    for (const auto& cell : device.partition(i)) {
      for (int b = 0; b < game.num_actions(i); ++b) {
        S margin = scalar_traits<S>::zero();
        for (int omega : cell) {
          for (int j = 0; j < game.num_players(); ++j) a[j] = profile[j][omega];
          S stay = game.utility(i, a);
          a[i] = b;
          margin += device.q()[omega] * (stay - game.utility(i, a));
        }
        report.record(margin, i,
                      "cell" + std::to_string(device.cell_of(i, cell.front())) + "->" +
                          game.actions()[i][b]);
      }
    }
  }
  return report;
}

template <class S>
struct CeInequality {
  int player;
  int action_from;
  int action_to;
  LinearInequality<S> row;  // row.coeffs . p >= 0
};

// Linear incentive constraints cutting out the polytope of correlated
// equilibrium distributions, one per ordered pair of distinct actions.
template <class S>
std::vector<CeInequality<S>> ce_distribution_inequalities(const Game<S>& game) {
  std::vector<CeInequality<S>> rows;
  for (int i = 0; i < game.num_players(); ++i) {
    for (int from = 0; from < game.num_actions(i); ++from) {
      for (int to = 0; to < game.num_actions(i); ++to) {
        if (to == from) continue;
        CeInequality<S> ineq{i, from, to,
                             {std::vector<S>(game.num_profiles(), scalar_traits<S>::zero()),
                              scalar_traits<S>::zero()}};
        for (std::size_t a = 0; a < game.num_profiles(); ++a) {
          ActionProfile profile = game.profile_at(a);
          if (profile[i] != from) continue;
          ActionProfile alt = profile;
          alt[i] = to;
          ineq.row.coeffs[a] = game.utility_at(i, a) - game.utility(i, alt);
        }
        rows.push_back(std::move(ineq));
      }
    }
  }
  return rows;
}

template <class S>
EquilibriumReport<S> is_ce_distribution(const Game<S>& game, const Distribution<S>& p) {
  if (p.size() != game.num_profiles()) {
    throw InputError("distribution size does not match profile space");
  }
  EquilibriumReport<S> report;
  for (const auto& ineq : ce_distribution_inequalities(game)) {
    S margin = scalar_traits<S>::zero();
    for (std::size_t a = 0; a < p.size(); ++a) margin += ineq.row.coeffs[a] * p[a];
    report.record(margin, ineq.player,
                  game.actions()[ineq.player][ineq.action_from] + "->" +
                      game.actions()[ineq.player][ineq.action_to]);
  }
  return report;
}

// Generalized Nash stability on a normal-form game with a coupled constraint
// set: the profile is feasible and no feasible unilateral deviation improves.
template <class S>
EquilibriumReport<S> is_generalized_nash(const ExtendedGame<S>& ext,
                                         const CoupledConstraintSet<S>& constraint,
                                         const std::vector<std::size_t>& profile) {
  const Game<S>& g = ext.game;
  if (static_cast<int>(profile.size()) != g.num_players()) {
    throw InputError("profile length does not match player count");
  }
  ActionProfile x(profile.begin(), profile.end());
  const std::size_t here_idx = g.profile_index(x);
  EquilibriumReport<S> report;
  if (!constraint.contains_indices(ext, profile)) {
    report.mark_infeasible();
    return report;
  }
  std::vector<std::size_t> alt = profile;
  for (int i = 0; i < g.num_players(); ++i) {
    for (std::size_t b = 0; b < static_cast<std::size_t>(g.num_actions(i)); ++b) {
      if (b == profile[i]) continue;
      alt[i] = b;
      if (constraint.contains_indices(ext, alt)) {
        ActionProfile y(alt.begin(), alt.end());
        S margin = g.utility_at(i, here_idx) - g.utility(i, y);
        report.record(margin, i, g.actions()[i][b]);
      }
    }
    alt[i] = profile[i];
  }
  return report;
}

// Definition-level check of a constrained correlated equilibrium: the profile
// is feasible and no feasible measurable deviation improves.
template <class S>
EquilibriumReport<S> is_constrained_correlated_equilibrium(
    const Game<S>& game, const CorrelationDevice<S>& device,
    const CoupledConstraintSet<S>& constraint, const CorrelatedProfile& profile,
    std::size_t cap = kDefaultEnumerationCap) {
  validate_profile(device, game, profile);
  EquilibriumReport<S> report;
  if (!constraint.contains(game, device, profile)) {
    report.mark_infeasible();
    return report;
  }
  CorrelatedProfile trial = profile;
  for (int i = 0; i < game.num_players(); ++i) {
    const S here = detail::payoff_against(game, device, profile, i, profile[i]);
    for (const auto& deviation : enumerate_strategies(device, game, i, cap)) {
      if (deviation == profile[i]) continue;
      trial[i] = deviation;
      if (constraint.contains(game, device, trial)) {
        S margin = here - detail::payoff_against(game, device, profile, i, deviation);
        report.record(margin, i, render_strategy(game.actions()[i], deviation));
      }
    }
    trial[i] = profile[i];
  }
  return report;
}

// Same set of equilibria, quantified over every measurable deviation: each
// one either does not improve or leads outside the constraint set.
template <class S>
EquilibriumReport<S> alternative_characterization_check(
    const Game<S>& game, const CorrelationDevice<S>& device,
    const CoupledConstraintSet<S>& constraint, const CorrelatedProfile& profile,
    std::size_t cap = kDefaultEnumerationCap) {
  validate_profile(device, game, profile);
  EquilibriumReport<S> report;
  if (!constraint.contains(game, device, profile)) {
    report.mark_infeasible();
    return report;
  }
  CorrelatedProfile trial = profile;
  for (int i = 0; i < game.num_players(); ++i) {
    const S here = detail::payoff_against(game, device, profile, i, profile[i]);
    for (const auto& deviation : enumerate_strategies(device, game, i, cap)) {
      if (deviation == profile[i]) continue;
      S margin = here - detail::payoff_against(game, device, profile, i, deviation);
      if (weakly_nonnegative(margin)) continue;  // not improving: condition holds
      trial[i] = deviation;
      bool feasible = constraint.contains(game, device, trial);
      trial[i] = profile[i];
      if (feasible) {
        report.record(margin, i, render_strategy(game.actions()[i], deviation));
      }
    }
  }
  return report;
}

// Per-outcome sufficient conditions: every feasible deviation loses weakly on
// every cell separately. Implies the definition-level check, not conversely.
template <class S>
EquilibriumReport<S> per_outcome_sufficient(const Game<S>& game,
                                            const CorrelationDevice<S>& device,
                                            const CoupledConstraintSet<S>& constraint,
                                            const CorrelatedProfile& profile,
                                            std::size_t cap = kDefaultEnumerationCap) {
  validate_profile(device, game, profile);
  EquilibriumReport<S> report;
  if (!constraint.contains(game, device, profile)) {
    report.mark_infeasible();
    return report;
  }
  CorrelatedProfile trial = profile;
  ActionProfile a(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    for (const auto& deviation : enumerate_strategies(device, game, i, cap)) {
      if (deviation == profile[i]) continue;
      trial[i] = deviation;
      bool feasible = constraint.contains(game, device, trial);
      trial[i] = profile[i];
      if (!feasible) continue;
      for (const auto& cell : device.partition(i)) {
        S margin = scalar_traits<S>::zero();
        for (int omega : cell) {
          for (int j = 0; j < game.num_players(); ++j) a[j] = profile[j][omega];
          S stay = game.utility(i, a);
          a[i] = deviation[omega];
          margin += device.q()[omega] * (stay - game.utility(i, a));
        }
        report.record(margin, i,
                      render_strategy(game.actions()[i], deviation) + "@cell" +
                          std::to_string(device.cell_of(i, cell.front())));
      }
    }
  }
  return report;
}

// Stability against feasible deviations that change the play on a single
// cell only. Weaker than the definition-level check.
template <class S>
EquilibriumReport<S> partial_deviation_check(const Game<S>& game,
                                             const CorrelationDevice<S>& device,
                                             const CoupledConstraintSet<S>& constraint,
                                             const CorrelatedProfile& profile) {
  validate_profile(device, game, profile);
  EquilibriumReport<S> report;
  if (!constraint.contains(game, device, profile)) {
    report.mark_infeasible();
    return report;
  }
  CorrelatedProfile trial = profile;
  ActionProfile a(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    for (const auto& cell : device.partition(i)) {
      for (int b = 0; b < game.num_actions(i); ++b) {
        MeasurableStrategy deviation = profile[i];
        for (int omega : cell) deviation[omega] = b;
        if (deviation == profile[i]) continue;
        trial[i] = deviation;
        bool feasible = constraint.contains(game, device, trial);
        trial[i] = profile[i];
        if (!feasible) continue;
        S margin = scalar_traits<S>::zero();
        for (int omega : cell) {
          for (int j = 0; j < game.num_players(); ++j) a[j] = profile[j][omega];
          S stay = game.utility(i, a);
          a[i] = b;
          margin += device.q()[omega] * (stay - game.utility(i, a));
        }
        report.record(margin, i,
                      "cell" + std::to_string(device.cell_of(i, cell.front())) + "->" +
                          game.actions()[i][b]);
      }
    }
  }
  return report;
}

}  // namespace correq

#endif  // CORREQ_EQUILIBRIUM_HPP_
