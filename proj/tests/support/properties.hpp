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

#ifndef CORREQ_TESTS_SUPPORT_PROPERTIES_HPP_
#define CORREQ_TESTS_SUPPORT_PROPERTIES_HPP_

#include <cstdint>

namespace correq::testing {

struct PropertyResult {
  int instances = 0;
  int failures = 0;
};

// Exact-mode randomized property suites shared by the unit tests and the
// acceptance run. Each returns the number of generated instances and the
// number of violations (zero on a correct implementation).

// p_{(beta o alpha_i, alpha_-i)} equals the pushforward of p_alpha under beta.
PropertyResult lemma_composition_identity(int iters, std::uint64_t seed);

// u_i(z_{beta,p}) equals the direct expected utility after deviation.
PropertyResult lemma_utility_identity(int iters, std::uint64_t seed);

// ||z(p) - z(p')|| <= |A_i| sqrt(|A|) ||p - p'|| on random pairs.
PropertyResult lipschitz_bound_property(int iters, std::uint64_t seed);

// Strategy-level stability equals the per-cell conditions.
PropertyResult expost_equivalence(int iters, std::uint64_t seed);

// Definition-level constrained check equals generalized Nash on the extension.
PropertyResult definition_vs_generalized_nash(int iters, std::uint64_t seed);

// The all-deviations disjunctive characterization matches the definition.
PropertyResult alternative_equivalence(int iters, std::uint64_t seed);

// Restricting a coupled constraint set keeps equilibria that stay feasible.
PropertyResult monotone_restriction(int iters, std::uint64_t seed);

// Unconstrained equilibria inside the constraint set stay equilibria.
PropertyResult ce_within_constraints(int iters, std::uint64_t seed);

// Shrinking the feasible distribution set keeps feasible accepted points.
PropertyResult nested_feasible_sets(int iters, std::uint64_t seed);

// Feasible correlated equilibrium distributions are always accepted.
PropertyResult feasible_ce_distribution_accepted(int iters, std::uint64_t seed);

// With the full simplex as feasible set, both profile- and distribution-level
// constrained checks coincide with the unconstrained ones.
PropertyResult full_set_reduction(int iters, std::uint64_t seed);

// Stable profiles induce accepted distributions, and accepted induced
// distributions are witnessed by the canonical device with the identity.
PropertyResult ce_profile_distribution_consistency(int iters, std::uint64_t seed);

// Distribution-level membership equals device-level brute force through the
// canonical device and identity profile.
PropertyResult theorem1_matches_device_bruteforce(int iters, std::uint64_t seed);

// The per-outcome conditions imply the definition-level check.
PropertyResult per_outcome_implies_definition(int iters, std::uint64_t seed);

// Derandomization preserves the induced distribution.
PropertyResult derandomization_preserves_distribution(int iters, std::uint64_t seed);

// Every canonical deviation lifts to a mixed deviation with the same induced
// distribution.
PropertyResult deviation_lifting_matches(int iters, std::uint64_t seed);

// Extension payoffs agree with expected utility under the profile
// distribution.
PropertyResult extension_payoff_consistency(int iters, std::uint64_t seed);

// The pushforward stays on the simplex, exactly.
PropertyResult z_preserves_simplex(int iters, std::uint64_t seed);

}  // namespace correq::testing

#endif  // CORREQ_TESTS_SUPPORT_PROPERTIES_HPP_
