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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "correq/canonical.hpp"
#include "correq/constraints.hpp"
#include "correq/device.hpp"
#include "correq/equilibrium.hpp"
#include "correq/explorer.hpp"
#include "correq/fixedpoint.hpp"
#include "correq/game_core.hpp"
#include "correq/io.hpp"

namespace {

using correq::json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitCapability = 4;

struct Args {
  std::string game_path;
  std::string device_path;
  std::string constraint_path;
  std::string rd_path;
  std::string profile_path;
  std::string dist_path;
  std::string start_path;
  std::string out_path;
  std::string summary_path;
  std::string format = "json";
  std::string method = "auto";
  int resolution = 60;
  double tol = 1e-8;
  double damping = 1.0;
  int max_iter = 10'000;
  int starts = 16;
  std::uint64_t seed = 0;
  std::uint64_t cap = 0;  // 0: per-command default
};

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw correq::InputError("cannot write file: " + out_path);
  out << payload;
}

void emit_json(const std::string& out_path, const json& j) {
  emit(out_path, j.dump(2) + "\n");
}

bool inputs_all_rational(const std::vector<json>& docs) {
  for (const auto& doc : docs) {
    if (!correq::json_all_rational(doc)) return false;
  }
  return true;
}

template <class S>
int run_extend(const Args& args, const json& game_doc, const json& device_doc) {
  auto game = correq::game_from_json<S>(game_doc);
  auto device = correq::device_from_json<S>(device_doc);
  const std::size_t cap = args.cap ? args.cap : correq::kDefaultEnumerationCap;
  auto ext = correq::extend(game, device, cap);
  emit_json(args.out_path, correq::extended_game_to_json(ext));
  return kExitTrue;
}

template <class S>
int run_check(const Args& args, const json& game_doc) {
  auto game = correq::game_from_json<S>(game_doc);
  const std::size_t cap = args.cap ? args.cap : correq::kDefaultEnumerationCap;

  std::optional<correq::CorrelationDevice<S>> device;
  if (!args.device_path.empty()) {
    device.emplace(correq::device_from_json<S>(correq::load_json_file(args.device_path)));
  }
  std::optional<correq::FeasibleSet<S>> feasible;
  if (!args.constraint_path.empty()) {
    feasible.emplace(
        correq::constraint_from_json<S>(correq::load_json_file(args.constraint_path), game));
  }

  std::string method = args.method;
  if (method == "auto") {
    if (!args.dist_path.empty()) {
      method = feasible ? "cce-dist" : "ce-dist";
    } else if (!args.profile_path.empty()) {
      method = (feasible || !args.rd_path.empty()) ? "cce" : "ce";
    } else {
      throw correq::InputError("check needs --profile or --dist");
    }
  }

  correq::EquilibriumReport<S> report;
  if (method == "ce-dist" || method == "cce-dist") {
    if (args.dist_path.empty()) throw correq::InputError("method needs --dist");
    auto p = correq::distribution_from_json<S>(correq::load_json_file(args.dist_path),
                                               game.num_profiles());
    if (method == "ce-dist") {
      report = correq::is_ce_distribution(game, p);
    } else {
      if (!feasible) throw correq::InputError("method needs --constraint");
      report = correq::is_cce_distribution(game, p, *feasible);
    }
  } else {
    if (!device || args.profile_path.empty()) {
      throw correq::InputError("method needs --device and --profile");
    }
    auto profile = correq::profile_from_json<S>(correq::load_json_file(args.profile_path),
                                                game, *device);
    auto constraint = correq::CoupledConstraintSet<S>::all_strategies();
    if (!args.rd_path.empty()) {
      constraint = correq::explicit_constraint_from_json<S>(
          correq::load_json_file(args.rd_path), game, *device);
    } else if (feasible) {
      constraint = correq::CoupledConstraintSet<S>::generated_by(*feasible);
    }
    if (method == "ce") {
      report = correq::is_correlated_equilibrium(game, *device, profile, cap);
    } else if (method == "expost") {
      report = correq::ex_post_check(game, *device, profile);
    } else if (method == "cce") {
      report = correq::is_constrained_correlated_equilibrium(game, *device, constraint,
                                                             profile, cap);
    } else if (method == "alternative") {
      report = correq::alternative_characterization_check(game, *device, constraint,
                                                          profile, cap);
    } else if (method == "per-outcome") {
      report = correq::per_outcome_sufficient(game, *device, constraint, profile, cap);
    } else if (method == "partial") {
      report = correq::partial_deviation_check(game, *device, constraint, profile);
    } else if (method == "gne") {
      auto ext = correq::extend(game, *device, cap);
      std::vector<std::size_t> indices(profile.size());
      for (std::size_t i = 0; i < profile.size(); ++i) {
        indices[i] =
            correq::strategy_index(*device, game, static_cast<int>(i), profile[i]);
      }
      report = correq::is_generalized_nash(ext, constraint, indices);
    } else {
      throw correq::InputError("unknown method: " + method);
    }
  }
  emit_json(args.out_path, correq::report_to_json(report));
  return report.verdict ? kExitTrue : kExitFalse;
}

template <class S>
json summary_to_json(const correq::PayoffSummary<S>& summary, const Args& args,
                     const correq::FeasibleSet<S>& feasible) {
  auto maxima = [](const correq::ClassMaxima<S>& c) {
    json out{{"count", c.count}};
    if (c.max_symmetric) out["max_symmetric"] = correq::scalar_to_json(*c.max_symmetric);
    json per_player = json::array();
    for (const auto& v : c.max_per_player) {
      per_player.push_back(v ? correq::scalar_to_json(*v) : json());
    }
    out["max_per_player"] = std::move(per_player);
    return out;
  };
  return json{{"resolution", args.resolution},
              {"constraint", feasible.kind_name()},
              {"total", summary.total},
              {"feasible", maxima(summary.feasible)},
              {"correlated_equilibrium", maxima(summary.ce)},
              {"constrained_correlated_equilibrium", maxima(summary.cce)},
              {"cce_outside_ce_polytope", summary.cce_outside_d},
              {"feasible_and_ce", summary.feasible_and_ce}};
}

template <class S>
int run_explore(const Args& args, const json& game_doc, const json& constraint_doc) {
  auto game = correq::game_from_json<S>(game_doc);
  auto feasible = correq::constraint_from_json<S>(constraint_doc, game);
  correq::ExplorerOptions options;
  if (args.cap) options.cap = args.cap;

  correq::PayoffSummary<S> summary;
  if (args.format == "csv") {
    std::ofstream file;
    std::ostream* csv = &std::cout;
    if (!args.out_path.empty()) {
      file.open(args.out_path, std::ios::binary);
      if (!file) throw correq::InputError("cannot write file: " + args.out_path);
      csv = &file;
    }
    correq::write_csv_header(*csv, game);
    correq::classify<S>(
        game, feasible, args.resolution,
        [&](const correq::ClassificationRecord<S>& record) {
          summary.add(record);
          correq::write_csv_record(*csv, record);
        },
        options);
    if (!args.summary_path.empty()) {
      emit_json(args.summary_path, summary_to_json(summary, args, feasible));
    }
    return kExitTrue;
  }
  correq::classify<S>(
      game, feasible, args.resolution,
      [&](const correq::ClassificationRecord<S>& record) { summary.add(record); },
      options);
  json summary_json = summary_to_json(summary, args, feasible);
  emit_json(args.out_path, summary_json);
  if (!args.summary_path.empty()) emit_json(args.summary_path, summary_json);
  return kExitTrue;
}

int run_fixed_point(const Args& args, const json& game_doc, const json& constraint_doc) {
  // The damped iteration runs in float64 regardless of the input spelling.
  auto game = correq::game_from_json<double>(game_doc);
  auto feasible = correq::constraint_from_json<double>(constraint_doc, game);
  correq::FixedPointOptions options;
  options.damping = args.damping;
  options.max_iter = args.max_iter;
  options.tol = args.tol;
  options.starts = args.starts;
  options.seed = args.seed;
  correq::FixedPointResult result =
      args.start_path.empty()
          ? correq::find_fixed_point_multistart(game, feasible, options)
          : correq::find_fixed_point(
                game, feasible,
                correq::distribution_from_json<double>(
                    correq::load_json_file(args.start_path), game.num_profiles()),
                options);
  if (result.feasible_set_changes > 0) {
    std::cerr << "note: the feasible deviation set changed " << result.feasible_set_changes
              << " time(s) during iteration\n";
  }
  emit_json(args.out_path, correq::fixed_point_result_to_json(result));
  return result.converged ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation-device and constrained-correlated-equilibrium toolkit"};
  app.require_subcommand(1);
  Args args;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--game,-g", args.game_path, "Game JSON file")->required();
    cmd->add_option("--out,-o", args.out_path, "Output file (default: stdout)");
    cmd->add_option("--cap", args.cap, "Enumeration / grid size cap");
  };

  CLI::App* extend = app.add_subcommand("extend", "Build the extension of a game by a device");
  add_common(extend);
  extend->add_option("--device,-d", args.device_path, "Device JSON file")->required();

  CLI::App* check = app.add_subcommand("check", "Run an equilibrium condition check");
  add_common(check);
  check->add_option("--device,-d", args.device_path, "Device JSON file");
  check->add_option("--constraint,-c", args.constraint_path, "Feasible-set JSON file");
  check->add_option("--rd", args.rd_path, "Explicit joint strategy set JSON file");
  check->add_option("--profile,-p", args.profile_path, "Correlated profile JSON file");
  check->add_option("--dist", args.dist_path, "Distribution JSON file");
  check->add_option("--method", args.method,
                    "auto|ce|expost|cce|alternative|per-outcome|partial|gne|ce-dist|cce-dist");

  CLI::App* explore = app.add_subcommand("explore", "Classify a simplex grid of distributions");
  add_common(explore);
  explore->add_option("--constraint,-c", args.constraint_path, "Feasible-set JSON file")
      ->required();
  explore->add_option("--resolution,-m", args.resolution, "Grid resolution");
  explore->add_option("--format", args.format, "csv|json (default json summary)");
  explore->add_option("--summary", args.summary_path, "Also write the JSON summary here");

  CLI::App* fixed = app.add_subcommand("fixed-point", "Search for a fixed point of the gain map");
  add_common(fixed);
  fixed->add_option("--constraint,-c", args.constraint_path, "Feasible-set JSON file")
      ->required();
  fixed->add_option("--start", args.start_path, "Start distribution JSON file");
  fixed->add_option("--tol", args.tol, "Residual tolerance");
  fixed->add_option("--damping", args.damping, "Damping factor");
  fixed->add_option("--max-iter", args.max_iter, "Iteration limit per start");
  fixed->add_option("--starts", args.starts, "Number of starts");
  fixed->add_option("--seed", args.seed, "Random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (args.resolution < 1) throw correq::InputError("--resolution must be at least 1");
    if (!(args.tol > 0.0)) throw correq::InputError("--tol must be positive");
    if (!(args.damping > 0.0) || args.damping > 1.0) {
      throw correq::InputError("--damping must lie in (0, 1]");
    }
    if (args.max_iter < 0) throw correq::InputError("--max-iter must be nonnegative");
    if (args.starts < 1) throw correq::InputError("--starts must be at least 1");
    if (app.got_subcommand(extend)) {
      json game_doc = correq::load_json_file(args.game_path);
      json device_doc = correq::load_json_file(args.device_path);
      return inputs_all_rational({game_doc, device_doc})
                 ? run_extend<correq::Rational>(args, game_doc, device_doc)
                 : run_extend<double>(args, game_doc, device_doc);
    }
    if (app.got_subcommand(check)) {
      json game_doc = correq::load_json_file(args.game_path);
      std::vector<json> docs{game_doc};
      for (const std::string& path :
           {args.device_path, args.constraint_path, args.rd_path, args.profile_path,
            args.dist_path}) {
        if (!path.empty()) docs.push_back(correq::load_json_file(path));
      }
      return inputs_all_rational(docs) ? run_check<correq::Rational>(args, game_doc)
                                       : run_check<double>(args, game_doc);
    }
    if (app.got_subcommand(explore)) {
      json game_doc = correq::load_json_file(args.game_path);
      json constraint_doc = correq::load_json_file(args.constraint_path);
      return inputs_all_rational({game_doc, constraint_doc})
                 ? run_explore<correq::Rational>(args, game_doc, constraint_doc)
                 : run_explore<double>(args, game_doc, constraint_doc);
    }
    if (app.got_subcommand(fixed)) {
      json game_doc = correq::load_json_file(args.game_path);
      json constraint_doc = correq::load_json_file(args.constraint_path);
      return run_fixed_point(args, game_doc, constraint_doc);
    }
  } catch (const correq::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const correq::CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const correq::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
