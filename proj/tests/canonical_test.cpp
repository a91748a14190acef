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

#include <vector>

#include "correq/canonical.hpp"
#include "support/instances.hpp"
#include "support/properties.hpp"

using correq::DeviationMap;
using correq::Rational;
using namespace correq::testing;

TEST_CASE("deviation map enumeration") {
  GameQ game = chicken();
  auto maps = all_deviation_maps(game, 0);
  REQUIRE(maps.size() == 4);
  CHECK(maps[0].table == std::vector<int>{0, 0});
  CHECK(maps[1].table == std::vector<int>{0, 1});
  CHECK(maps[2].table == std::vector<int>{1, 0});
  CHECK(maps[3].table == std::vector<int>{1, 1});
  int identities = 0;
  for (const auto& beta : maps) {
    if (beta.is_identity()) ++identities;
  }
  CHECK(identities == 1);

  GameQ three({"a", "b"}, {{"x", "y", "z"}, {"l", "r"}},
              std::vector<std::vector<Rational>>(6, {0, 0}));
  CHECK(all_deviation_maps(three, 0).size() == 27);
  CHECK(all_deviation_maps(three, 1).size() == 4);
}

TEST_CASE("pushforward worked examples") {
  GameQ game = chicken();
  DistQ point = DistQ::point_mass(4, game.profile_index({0, 1}));

  DeviationMap identity{0, {0, 1}};
  CHECK(z_transform(game, point, identity) == point);

  DeviationMap to_aggressive{0, {1, 1}};
  CHECK(z_transform(game, point, to_aggressive) ==
        DistQ::point_mass(4, game.profile_index({1, 1})));

  DistQ three_way({Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(0)});
  DistQ pushed = z_transform(game, three_way, to_aggressive);
  CHECK(pushed[0] == Rational(0));
  CHECK(pushed[1] == Rational(0));
  CHECK(pushed[2] == Rational(2, 3));
  CHECK(pushed[3] == Rational(1, 3));
}

TEST_CASE("expected utility after deviation") {
  GameQ game = chicken();
  DistQ three_way({Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(0)});
  DeviationMap identity{0, {0, 1}};
  CHECK(expected_utility_after_deviation(game, three_way, identity) ==
        expected_utility(game, three_way, 0));
  DeviationMap to_aggressive{0, {1, 1}};
  CHECK(expected_utility_after_deviation(game, three_way, to_aggressive) ==
        Rational(20, 3));
  DistQ point = DistQ::point_mass(4, game.profile_index({0, 0}));
  CHECK(expected_utility_after_deviation(game, point, to_aggressive) == Rational(10));
}

TEST_CASE("membership test for constrained equilibrium distributions") {
  GameQ game = chicken();
  DistQ outside({Rational(0), Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  CHECK_FALSE(is_cce_distribution(game, outside, SetQ::full(4)).verdict);

  SetQ sw14 = SetQ::sw_floor(game, Rational(14));
  DistQ on_pp = DistQ::point_mass(4, game.profile_index({0, 0}));
  CHECK(is_cce_distribution(game, on_pp, sw14).verdict);

  DistQ three_way({Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(0)});
  CHECK(is_cce_distribution(game, three_way, SetQ::full(4)).verdict);
  CHECK(is_ce_distribution(game, three_way).verdict);

  // Infeasible inputs are rejected with a witness.
  auto report = is_cce_distribution(game, outside, SetQ::sw_floor(game, Rational(15)));
  CHECK_FALSE(report.verdict);
  REQUIRE_FALSE(report.witnesses.empty());
  CHECK(report.witnesses.front().deviation == "infeasible");
}

TEST_CASE("pushforward contraction bound") {
  GameQ game = chicken();
  DeviationMap identity{0, {0, 1}};
  DistQ p = DistQ::uniform(4);
  auto same = lipschitz_witness(game, 0, identity, p, p);
  CHECK(same.lhs == 0.0);
  CHECK(same.bound == 0.0);

  // Point masses differing in the other player's coordinate: the pushforward
  // under the identity is a permutation, so the distance is preserved.
  DistQ a = DistQ::point_mass(4, game.profile_index({0, 0}));
  DistQ b = DistQ::point_mass(4, game.profile_index({0, 1}));
  auto moved = lipschitz_witness(game, 0, identity, a, b);
  CHECK(moved.lhs == doctest::Approx(std::sqrt(2.0)));
  CHECK(moved.bound == doctest::Approx(4.0 * std::sqrt(2.0)));

  Rng rng(23);
  for (int t = 0; t < 500; ++t) {
    DistQ p1 = random_distribution(rng, 4);
    DistQ p2 = random_distribution(rng, 4);
    DeviationMap beta = random_deviation_map(rng, game, 0);
    auto witness = lipschitz_witness(game, 0, beta, p1, p2);
    CHECK(witness.lhs <= witness.bound + 1e-9);
  }
}

TEST_CASE("randomized identities") {
  CHECK(lemma_composition_identity(150, 101).failures == 0);
  CHECK(lemma_utility_identity(200, 102).failures == 0);
  CHECK(z_preserves_simplex(200, 103).failures == 0);
  CHECK(theorem1_matches_device_bruteforce(150, 104).failures == 0);
  CHECK(feasible_ce_distribution_accepted(100, 105).failures == 0);
  CHECK(nested_feasible_sets(60, 106).failures == 0);
}

TEST_CASE("derandomization and lifting") {
  CHECK(derandomization_preserves_distribution(120, 107).failures == 0);
  CHECK(deviation_lifting_matches(120, 108).failures == 0);
  CHECK(extension_payoff_consistency(150, 109).failures == 0);
}
