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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <utility>
#include <vector>

#include "correq/device.hpp"
#include "correq/equilibrium.hpp"
#include "support/instances.hpp"

using correq::CorrelatedProfile;
using correq::InputError;
using correq::MeasurableStrategy;
using correq::MixedCorrelatedProfile;
using correq::Rational;
using correq::ResourceError;
using namespace correq::testing;

namespace {

// The four measurable strategies of each chicken player, keyed the way the
// worked example labels them: 1 = always P, 2 = always A, 3 = P unless the
// observed cell is the first one, 4 = the opposite switch.
const MeasurableStrategy kRow1{0, 0, 0};
const MeasurableStrategy kRow2{1, 1, 1};
const MeasurableStrategy kRow3{1, 0, 0};
const MeasurableStrategy kRow4{0, 1, 1};
const MeasurableStrategy kCol1{0, 0, 0};
const MeasurableStrategy kCol2{1, 1, 1};
const MeasurableStrategy kCol3{0, 0, 1};
const MeasurableStrategy kCol4{1, 1, 0};

const MeasurableStrategy* kRows[4] = {&kRow1, &kRow2, &kRow3, &kRow4};
const MeasurableStrategy* kCols[4] = {&kCol1, &kCol2, &kCol3, &kCol4};

// Full 4x4 payoff table of the extension, in thirds.
constexpr std::array<std::array<std::pair<int, int>, 4>, 4> kExtendedThirds{{
    {{{24, 24}, {9, 30}, {19, 26}, {14, 28}}},
    {{{30, 9}, {0, 0}, {20, 6}, {10, 3}}},
    {{{26, 19}, {6, 20}, {21, 21}, {11, 18}}},
    {{{28, 14}, {3, 10}, {18, 11}, {13, 13}}},
}};

}  // namespace

TEST_CASE("device construction validates partitions and prior") {
  CHECK_THROWS_AS(DeviceQ({"a", "b"}, {{{0}, {0, 1}}, {{0, 1}}},
                          {Rational(1, 2), Rational(1, 2)}),
                  InputError);
  CHECK_THROWS_AS(DeviceQ({"a", "b"}, {{{0}}, {{0, 1}}},
                          {Rational(1, 2), Rational(1, 2)}),
                  InputError);
  CHECK_THROWS_AS(DeviceQ({"a", "b"}, {{{0}, {1}}, {{0, 1}}},
                          {Rational(1, 2), Rational(1, 3)}),
                  InputError);
  DeviceQ device({"a", "b", "c"}, {{{2, 1}, {0}}, {{0, 1, 2}}},
                 {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  // Cells are renormalized: sorted internally and ordered by minimum element.
  CHECK(device.partition(0) == std::vector<std::vector<int>>{{0}, {1, 2}});
  CHECK(device.cell_of(0, 2) == 1);
}

TEST_CASE("strategy enumeration counts and order") {
  GameQ game = chicken();
  DeviceQ device = chicken_device();
  auto row = enumerate_strategies(device, game, 0);
  auto col = enumerate_strategies(device, game, 1);
  REQUIRE(row.size() == 4);
  REQUIRE(col.size() == 4);
  // Lexicographic over per-cell assignments.
  CHECK(row[0] == kRow1);
  CHECK(row[1] == kRow4);
  CHECK(row[2] == kRow3);
  CHECK(row[3] == kRow2);
  CHECK(col[0] == kCol1);
  CHECK(col[1] == kCol3);
  CHECK(col[2] == kCol4);
  CHECK(col[3] == kCol2);
  for (std::size_t s = 0; s < row.size(); ++s) {
    CHECK(strategy_index(device, game, 0, row[s]) == s);
    CHECK(strategy_index(device, game, 1, col[s]) == s);
  }

  DeviceQ singleton({"o"}, {{{0}}, {{0}}}, {Rational(1)});
  CHECK(enumerate_strategies(singleton, game, 0).size() == 2);

  DeviceQ canonical = canonical_device(game, DistQ::uniform(4));
  CHECK(enumerate_strategies(canonical, game, 0).size() == 4);
  CHECK(enumerate_strategies(canonical, game, 1).size() == 4);
}

TEST_CASE("enumeration cap raises a resource error") {
  GameQ game = chicken();
  DeviceQ device = chicken_device();
  CHECK_THROWS_AS(enumerate_strategies(device, game, 0, 3), ResourceError);
  CHECK_THROWS_AS(extend(game, device, 15), ResourceError);
}

TEST_CASE("extension reproduces the worked 4x4 table exactly") {
  GameQ game = chicken();
  DeviceQ device = chicken_device();
  auto ext = extend(game, device);
  REQUIRE(ext.game.num_profiles() == 16);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      auto ri = strategy_index(device, game, 0, *kRows[r]);
      auto ci = strategy_index(device, game, 1, *kCols[c]);
      const auto& u = ext.game.utility({static_cast<int>(ri), static_cast<int>(ci)});
      CHECK(u[0] == Rational(kExtendedThirds[r][c].first, 3));
      CHECK(u[1] == Rational(kExtendedThirds[r][c].second, 3));
    }
  }
}

TEST_CASE("single-outcome extension is the original game") {
  GameQ game = chicken();
  DeviceQ singleton({"o"}, {{{0}}, {{0}}}, {Rational(1)});
  auto ext = extend(game, singleton);
  REQUIRE(ext.game.num_profiles() == game.num_profiles());
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    CHECK(ext.game.utility_at(a) == game.utility_at(a));
  }
}

TEST_CASE("profile distributions of the worked examples") {
  GameQ game = intersection_game();
  DeviceQ lights = traffic_lights_device();
  // Wait on red, go on green.
  CorrelatedProfile alpha{{0, 1}, {1, 0}};
  DistQ p = profile_distribution(game, lights, alpha);
  CHECK(p[game.profile_index({0, 1})] == Rational(1, 2));
  CHECK(p[game.profile_index({1, 0})] == Rational(1, 2));
  // The mirrored profile induces the same distribution.
  CorrelatedProfile delta{{1, 0}, {0, 1}};
  CHECK(profile_distribution(game, lights, delta) == p);

  GameQ ch = chicken();
  DeviceQ device = chicken_device();
  CorrelatedProfile constant{{0, 0, 0}, {1, 1, 1}};
  CHECK(profile_distribution(ch, device, constant) ==
        DistQ::point_mass(4, ch.profile_index({0, 1})));

  DistQ skew = profile_distribution(ch, device, {kRow4, kCol4});
  CHECK(skew[0] == Rational(0));
  CHECK(skew[1] == Rational(1, 3));
  CHECK(skew[2] == Rational(1, 3));
  CHECK(skew[3] == Rational(1, 3));
}

TEST_CASE("non-measurable profiles are rejected") {
  GameQ game = chicken();
  DeviceQ device = chicken_device();
  CorrelatedProfile bad{{0, 0, 1}, {0, 0, 0}};  // row player splits cell {M, L}
  CHECK_THROWS_AS(validate_profile(device, game, bad), InputError);
  CHECK_THROWS_AS(profile_distribution(game, device, bad), InputError);
}

TEST_CASE("canonical device structure") {
  GameQ game = chicken();
  DistQ p({Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(0)});
  DeviceQ canonical = canonical_device(game, p);
  CHECK(canonical.num_outcomes() == 4);
  CHECK(canonical.q() == p.weights());
  for (int i = 0; i < 2; ++i) {
    REQUIRE(canonical.num_cells(i) == 2);
    CHECK(canonical.partition(i)[0].size() == 2);
    CHECK(canonical.partition(i)[1].size() == 2);
  }
  CHECK(canonical.partition(0) == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  CHECK(canonical.partition(1) == std::vector<std::vector<int>>{{0, 2}, {1, 3}});

  DeviceQ from_uniform = canonical_device(game, DistQ::uniform(4));
  CHECK(from_uniform.q() == DistQ::uniform(4).weights());

  // The identity profile on the canonical device of an equilibrium
  // distribution is itself an equilibrium of the canonical extension.
  CHECK(is_correlated_equilibrium(game, canonical, identity_profile(game)).verdict);
}

TEST_CASE("induced distributions of mixed correlated profiles") {
  GameQ game = mixing_gap_game();
  DeviceQ singleton({"o"}, {{{0}}, {{0}}}, {Rational(1)});
  MixedCorrelatedProfile<Rational> pure_gamma{
      {{{Rational(1), Rational(0)}}, {{Rational(1), Rational(0)}}}};
  DistQ induced = induced_distribution(game, singleton, pure_gamma);
  CHECK(induced == DistQ::point_mass(4, game.profile_index({0, 0})));

  MixedCorrelatedProfile<Rational> mixed_row{
      {{{Rational(1, 2), Rational(1, 2)}}, {{Rational(1), Rational(0)}}}};
  DistQ shifted = induced_distribution(game, singleton, mixed_row);
  CHECK(shifted[game.profile_index({0, 0})] == Rational(1, 2));
  CHECK(shifted[game.profile_index({1, 0})] == Rational(1, 2));
  CHECK(expected_utility(game, shifted, 0) == Rational(1));

  // Degenerate mixing reduces to the pure profile distribution.
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    GameQ g = random_game(rng, 2, 3);
    DeviceQ d = random_device(rng, g, 5);
    CorrelatedProfile alpha = random_profile(rng, d, g);
    MixedCorrelatedProfile<Rational> gamma;
    gamma.probs.resize(g.num_players());
    for (int i = 0; i < g.num_players(); ++i) {
      for (int w = 0; w < d.num_outcomes(); ++w) {
        std::vector<Rational> dist(g.num_actions(i), Rational(0));
        dist[alpha[i][w]] = Rational(1);
        gamma.probs[i].push_back(std::move(dist));
      }
    }
    CHECK(induced_distribution(g, d, gamma) == profile_distribution(g, d, alpha));
  }
}

TEST_CASE("lifting rejects deviations that peek at other coordinates") {
  GameQ game = chicken();
  DeviceQ device = chicken_device();
  std::vector<Rational> ne{Rational(3, 5), Rational(2, 5)};
  MixedCorrelatedProfile<Rational> gamma{{{ne, ne, ne}, {ne, ne, ne}}};
  // Plays the column player's recommendation: not measurable for the row.
  MeasurableStrategy peeking(4);
  for (std::size_t a = 0; a < 4; ++a) peeking[a] = game.profile_at(a)[1];
  CHECK_THROWS_AS(lift_deviation(game, device, gamma, 0, peeking),
                  correq::InputError);
}

TEST_CASE("derandomization worked examples") {
  GameQ game = mixing_gap_game();
  DeviceQ singleton({"o"}, {{{0}}, {{0}}}, {Rational(1)});
  MixedCorrelatedProfile<Rational> pure_gamma{
      {{{Rational(1), Rational(0)}}, {{Rational(1), Rational(0)}}}};
  auto [canonical, identity] = derandomize(game, singleton, pure_gamma);
  CHECK(profile_distribution(game, canonical, identity) ==
        DistQ::point_mass(4, game.profile_index({0, 0})));

  GameQ ch = chicken();
  DeviceQ device = chicken_device();
  // Independent mixing with the stage-game equilibrium weights at every
  // outcome collapses to the product distribution.
  std::vector<Rational> ne{Rational(3, 5), Rational(2, 5)};
  MixedCorrelatedProfile<Rational> gamma{{{ne, ne, ne}, {ne, ne, ne}}};
  auto [canonical_ch, id_ch] = derandomize(ch, device, gamma);
  DistQ replay = profile_distribution(ch, canonical_ch, id_ch);
  CHECK(replay[0] == Rational(9, 25));
  CHECK(replay[1] == Rational(6, 25));
  CHECK(replay[2] == Rational(6, 25));
  CHECK(replay[3] == Rational(4, 25));
}
