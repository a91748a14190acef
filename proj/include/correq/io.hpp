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

#ifndef CORREQ_IO_HPP_
#define CORREQ_IO_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "correq/constraints.hpp"
#include "correq/device.hpp"
#include "correq/equilibrium.hpp"
#include "correq/errors.hpp"
#include "correq/fixedpoint.hpp"
#include "correq/game_core.hpp"
#include "correq/rational.hpp"

namespace correq {

using json = nlohmann::json;

json load_json_file(const std::string& path);

// True when every numeric leaf is an integer; fractional values are spelled
// as "p/q" strings. Drives the choice between exact and float64 arithmetic.
bool json_all_rational(const json& j);

template <class S>
S parse_scalar(const json& j);

template <>
inline double parse_scalar<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto r = Rational::parse(j.get<std::string>());
    if (r) return r->to_double();
  }
  throw InputError("expected a number or \"p/q\" string");
}

template <>
inline Rational parse_scalar<Rational>(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    auto r = Rational::parse(j.get<std::string>());
    if (r) return *r;
  }
  throw InputError("expected an integer or \"p/q\" string in exact mode");
}

template <class S>
json scalar_to_json(const S& value) {
  if constexpr (scalar_traits<S>::is_exact) {
    if (value.den() == 1) return json(value.num());
    return json(value.str());
  } else {
    return json(value);
  }
}

namespace detail {

template <class S>
void flatten_payoffs(const json& node, int depth, int num_players,
                     const std::vector<std::size_t>& shape,
                     std::vector<std::vector<S>>& out) {
  if (depth == static_cast<int>(shape.size())) {
    if (!node.is_array() || node.size() != static_cast<std::size_t>(num_players)) {
      throw InputError("payoff leaf must list one utility per player");
    }
    std::vector<S> u;
    u.reserve(num_players);
    for (const auto& v : node) u.push_back(parse_scalar<S>(v));
    out.push_back(std::move(u));
    return;
  }
  if (!node.is_array() || node.size() != shape[depth]) {
    throw InputError("payoff tensor shape does not match action counts");
  }
  for (const auto& child : node) {
    flatten_payoffs<S>(child, depth + 1, num_players, shape, out);
  }
}

inline int label_index(const std::vector<std::string>& labels, const std::string& label,
                       const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  throw InputError(std::string("unknown ") + what + " label: " + label);
}

}  // namespace detail

// {"players": [...], "actions": [[...], ...], "payoffs": nested row-major}
template <class S>
Game<S> game_from_json(const json& j) {
  if (!j.is_object() || !j.contains("players") || !j.contains("actions") ||
      !j.contains("payoffs")) {
    throw InputError("game file needs players, actions and payoffs");
  }
  std::vector<std::string> players = j.at("players").get<std::vector<std::string>>();
  std::vector<std::vector<std::string>> actions =
      j.at("actions").get<std::vector<std::vector<std::string>>>();
  std::vector<std::size_t> shape;
  for (const auto& acts : actions) shape.push_back(acts.size());
  std::vector<std::vector<S>> payoffs;
  detail::flatten_payoffs<S>(j.at("payoffs"), 0, static_cast<int>(players.size()), shape,
                             payoffs);
  return Game<S>(std::move(players), std::move(actions), std::move(payoffs));
}

template <class S>
json game_to_json(const Game<S>& game) {
  json payoffs;
  // Build the nested tensor from the flat row-major order.
  std::vector<json> level;
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    json leaf = json::array();
    for (int i = 0; i < game.num_players(); ++i) {
      leaf.push_back(scalar_to_json(game.utility_at(i, a)));
    }
    level.push_back(std::move(leaf));
  }
  for (int i = game.num_players() - 1; i >= 0; --i) {
    const std::size_t width = game.actions()[i].size();
    std::vector<json> parent;
    for (std::size_t pos = 0; pos < level.size(); pos += width) {
      json group = json::array();
      for (std::size_t o = 0; o < width; ++o) group.push_back(std::move(level[pos + o]));
      parent.push_back(std::move(group));
    }
    level = std::move(parent);
  }
  payoffs = std::move(level.front());
  return json{{"players", game.players()},
              {"actions", game.actions()},
              {"payoffs", std::move(payoffs)}};
}

// {"outcomes": [...], "q": [...], "partitions": [[["H"],["M","L"]], ...]}
template <class S>
CorrelationDevice<S> device_from_json(const json& j) {
  if (!j.is_object() || !j.contains("outcomes") || !j.contains("q") ||
      !j.contains("partitions")) {
    throw InputError("device file needs outcomes, q and partitions");
  }
  std::vector<std::string> outcomes = j.at("outcomes").get<std::vector<std::string>>();
  std::vector<S> q;
  for (const auto& v : j.at("q")) q.push_back(parse_scalar<S>(v));
  std::vector<std::vector<std::vector<int>>> partitions;
  for (const auto& player_cells : j.at("partitions")) {
    std::vector<std::vector<int>> cells;
    for (const auto& cell : player_cells) {
      std::vector<int> indices;
      for (const auto& label : cell) {
        indices.push_back(
            detail::label_index(outcomes, label.get<std::string>(), "outcome"));
      }
      cells.push_back(std::move(indices));
    }
    partitions.push_back(std::move(cells));
  }
  return CorrelationDevice<S>(std::move(outcomes), std::move(partitions), std::move(q));
}

template <class S>
json device_to_json(const CorrelationDevice<S>& device) {
  json q = json::array();
  for (const S& w : device.q()) q.push_back(scalar_to_json(w));
  json partitions = json::array();
  for (int i = 0; i < device.num_players(); ++i) {
    json cells = json::array();
    for (const auto& cell : device.partition(i)) {
      json labels = json::array();
      for (int w : cell) labels.push_back(device.outcomes()[w]);
      cells.push_back(std::move(labels));
    }
    partitions.push_back(std::move(cells));
  }
  return json{{"outcomes", device.outcomes()},
              {"q", std::move(q)},
              {"partitions", std::move(partitions)}};
}

// {"weights": [...]} over the documented row-major profile order.
template <class S>
Distribution<S> distribution_from_json(const json& j, std::size_t expected_size) {
  const json& w = j.is_object() && j.contains("weights") ? j.at("weights") : j;
  if (!w.is_array() || w.size() != expected_size) {
    throw InputError("distribution needs one weight per joint action profile");
  }
  std::vector<S> weights;
  for (const auto& v : w) weights.push_back(parse_scalar<S>(v));
  return Distribution<S>(std::move(weights));
}

template <class S>
json distribution_to_json(const Distribution<S>& p) {
  json w = json::array();
  for (std::size_t a = 0; a < p.size(); ++a) w.push_back(scalar_to_json(p[a]));
  return json{{"weights", std::move(w)}};
}

// {"strategies": [[action label per outcome] per player]}
template <class S>
CorrelatedProfile profile_from_json(const json& j, const Game<S>& game,
                                    const CorrelationDevice<S>& device) {
  const json& s = j.is_object() && j.contains("strategies") ? j.at("strategies") : j;
  if (!s.is_array() || static_cast<int>(s.size()) != game.num_players()) {
    throw InputError("profile needs one strategy per player");
  }
  CorrelatedProfile profile;
  for (int i = 0; i < game.num_players(); ++i) {
    const json& map = s.at(i);
    if (!map.is_array() || static_cast<int>(map.size()) != device.num_outcomes()) {
      throw InputError("strategy needs one action per outcome");
    }
    MeasurableStrategy strategy;
    for (const auto& label : map) {
      strategy.push_back(
          detail::label_index(game.actions()[i], label.get<std::string>(), "action"));
    }
    profile.push_back(std::move(strategy));
  }
  validate_profile(device, game, profile);
  return profile;
}

// {"profiles": [profile, ...]} with each entry in the profile schema above.
template <class S>
CoupledConstraintSet<S> explicit_constraint_from_json(const json& j, const Game<S>& game,
                                                      const CorrelationDevice<S>& device) {
  if (!j.is_object() || !j.contains("profiles")) {
    throw InputError("explicit constraint set needs a profiles list");
  }
  std::vector<std::vector<std::size_t>> joint;
  for (const auto& entry : j.at("profiles")) {
    CorrelatedProfile profile = profile_from_json(entry, game, device);
    std::vector<std::size_t> idx(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) {
      idx[i] = strategy_index(device, game, static_cast<int>(i), profile[i]);
    }
    joint.push_back(std::move(idx));
  }
  return CoupledConstraintSet<S>::explicit_set(std::move(joint));
}

// {"kind": "...", "params": {...}}
template <class S>
FeasibleSet<S> constraint_from_json(const json& j, const Game<S>& game) {
  if (!j.is_object() || !j.contains("kind")) {
    throw InputError("constraint file needs a kind");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();
  auto profile_list = [&](const json& list) {
    std::vector<std::size_t> profiles;
    for (const auto& entry : list) {
      ActionProfile profile;
      if (!entry.is_array() || static_cast<int>(entry.size()) != game.num_players()) {
        throw InputError("profile needs one action label per player");
      }
      for (int i = 0; i < game.num_players(); ++i) {
        profile.push_back(
            detail::label_index(game.actions()[i], entry.at(i).get<std::string>(), "action"));
      }
      profiles.push_back(game.profile_index(profile));
    }
    return profiles;
  };
  if (kind == "full") return FeasibleSet<S>::full(game.num_profiles());
  if (kind == "sw_floor") {
    return FeasibleSet<S>::sw_floor(game, parse_scalar<S>(params.at("min")));
  }
  if (kind == "linear") {
    std::vector<LinearInequality<S>> rows;
    for (const auto& row : params.at("rows")) {
      LinearInequality<S> ineq;
      for (const auto& c : row.at("coeffs")) ineq.coeffs.push_back(parse_scalar<S>(c));
      ineq.rhs = parse_scalar<S>(row.at("rhs"));
      rows.push_back(std::move(ineq));
    }
    return FeasibleSet<S>::linear(game.num_profiles(), std::move(rows));
  }
  if (kind == "support_zero") {
    return FeasibleSet<S>::support_zero(game.num_profiles(),
                                        profile_list(params.at("profiles")));
  }
  if (kind == "support_positive") {
    return FeasibleSet<S>::support_positive(game.num_profiles(),
                                            profile_list(params.at("profiles")));
  }
  if (kind == "pure_only") return FeasibleSet<S>::pure_only(game.num_profiles());
  if (kind == "intersection") {
    const json& parts = params.at("of");
    if (!parts.is_array() || parts.size() < 2) {
      throw InputError("intersection needs at least two constraints");
    }
    FeasibleSet<S> result = constraint_from_json<S>(parts.at(0), game);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      result = FeasibleSet<S>::intersection(std::move(result),
                                            constraint_from_json<S>(parts.at(i), game));
    }
    return result;
  }
  throw InputError("unknown constraint kind: " + kind);
}

template <class S>
json extended_game_to_json(const ExtendedGame<S>& ext) {
  json out = game_to_json(ext.game);
  out["outcomes"] = ext.device.outcomes();
  json tables = json::array();
  for (int i = 0; i < ext.base.num_players(); ++i) {
    json per_player = json::array();
    for (const auto& strategy : ext.strategies[i]) {
      json map = json::array();
      for (int action : strategy) map.push_back(ext.base.actions()[i][action]);
      per_player.push_back(std::move(map));
    }
    tables.push_back(std::move(per_player));
  }
  out["strategy_tables"] = std::move(tables);
  return out;
}

template <class S>
json report_to_json(const EquilibriumReport<S>& report) {
  json witnesses = json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back(json{{"player", w.player},
                             {"deviation", w.deviation},
                             {"gain", scalar_to_json(w.gain)}});
  }
  json margins = json::array();
  for (const auto& m : report.margins) margins.push_back(scalar_to_json(m));
  return json{{"verdict", report.verdict},
              {"witnesses", std::move(witnesses)},
              {"margins", std::move(margins)}};
}

inline json fixed_point_result_to_json(const FixedPointResult& result) {
  json point = json::array();
  for (std::size_t a = 0; a < result.point.size(); ++a) point.push_back(result.point[a]);
  return json{{"point", std::move(point)},
              {"residual", result.residual},
              {"converged", result.converged},
              {"iterations", result.iterations},
              {"starts_used", result.starts_used}};
}

}  // namespace correq

#endif  // CORREQ_IO_HPP_
