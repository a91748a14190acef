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

#ifndef CORREQ_CONSTRAINTS_HPP_
#define CORREQ_CONSTRAINTS_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "correq/errors.hpp"
#include "correq/game_core.hpp"
#include "correq/rational.hpp"

namespace correq {

// Affine constraint coeffs . p >= rhs over distribution coordinates.
template <class S>
struct LinearInequality {
  std::vector<S> coeffs;
  S rhs;
};

template <class S>
S evaluate(const LinearInequality<S>& row, const Distribution<S>& p) {
  if (row.coeffs.size() != p.size()) {
    throw InputError("inequality dimension does not match distribution");
  }
  S total = scalar_traits<S>::zero();
  for (std::size_t a = 0; a < p.size(); ++a) total += row.coeffs[a] * p[a];
  return total - row.rhs;
}

// Membership oracle for a feasible set of distributions, with structural
// metadata (convexity, closedness, optional linear description) used by the
// fixed-point machinery and the exact emptiness certificates.
template <class S>
class FeasibleSet {
 public:
  enum class Kind {
    kFull,
    kSwFloor,
    kLinear,
    kSupportZero,
    kSupportPositive,
    kPureOnly,
    kIntersection,
  };

  static FeasibleSet full(std::size_t num_profiles) {
    FeasibleSet c(Kind::kFull, num_profiles);
    c.convex_ = true;
    c.closed_ = true;
    c.description_ = std::vector<LinearInequality<S>>{};
    return c;
  }

  // { p : sum_i u_i(p) >= min_welfare }
  static FeasibleSet sw_floor(const Game<S>& game, const S& min_welfare) {
    FeasibleSet c(Kind::kSwFloor, game.num_profiles());
    LinearInequality<S> row;
    row.coeffs.resize(game.num_profiles(), scalar_traits<S>::zero());
    for (std::size_t a = 0; a < game.num_profiles(); ++a) {
      for (int i = 0; i < game.num_players(); ++i) {
        row.coeffs[a] += game.utility_at(i, a);
      }
    }
    row.rhs = min_welfare;
    c.rows_.push_back(std::move(row));
    c.convex_ = true;
    c.closed_ = true;
    c.description_ = c.rows_;
    return c;
  }

  static FeasibleSet linear(std::size_t num_profiles,
                            std::vector<LinearInequality<S>> rows) {
    FeasibleSet c(Kind::kLinear, num_profiles);
    for (const auto& row : rows) {
      if (row.coeffs.size() != num_profiles) {
        throw InputError("linear constraint has wrong dimension");
      }
    }
    c.rows_ = std::move(rows);
    c.convex_ = true;
    c.closed_ = true;
    c.description_ = c.rows_;
    return c;
  }

  // { p : p(a) = 0 for every listed profile }
  static FeasibleSet support_zero(std::size_t num_profiles,
                                  std::vector<std::size_t> profiles) {
    FeasibleSet c(Kind::kSupportZero, num_profiles);
    c.profiles_ = normalize_profiles(num_profiles, std::move(profiles));
    std::vector<LinearInequality<S>> rows;
    for (std::size_t a : c.profiles_) {
      LinearInequality<S> row;
      row.coeffs.resize(num_profiles, scalar_traits<S>::zero());
      row.coeffs[a] = scalar_traits<S>::from_int(-1);
      row.rhs = scalar_traits<S>::zero();
      rows.push_back(std::move(row));
    }
    c.rows_ = rows;
    c.convex_ = true;
    c.closed_ = true;
    c.description_ = std::move(rows);
    return c;
  }

  // { p : p(a) > 0 for every listed profile }; convex but not closed.
  static FeasibleSet support_positive(std::size_t num_profiles,
                                      std::vector<std::size_t> profiles) {
    FeasibleSet c(Kind::kSupportPositive, num_profiles);
    c.profiles_ = normalize_profiles(num_profiles, std::move(profiles));
    c.convex_ = true;
    c.closed_ = false;
    return c;
  }

  // { p : p is a point mass }; closed but not convex.
  static FeasibleSet pure_only(std::size_t num_profiles) {
    FeasibleSet c(Kind::kPureOnly, num_profiles);
    c.convex_ = false;
    c.closed_ = true;
    return c;
  }

  static FeasibleSet intersection(FeasibleSet a, FeasibleSet b) {
    if (a.dimension() != b.dimension()) {
      throw InputError("cannot intersect sets over different profile spaces");
    }
    FeasibleSet c(Kind::kIntersection, a.dimension());
    c.convex_ = a.convex_ && b.convex_;
    c.closed_ = a.closed_ && b.closed_;
    if (a.description_ && b.description_) {
      std::vector<LinearInequality<S>> rows = *a.description_;
      rows.insert(rows.end(), b.description_->begin(), b.description_->end());
      c.description_ = std::move(rows);
    }
    c.children_.push_back(std::move(a));
    c.children_.push_back(std::move(b));
    return c;
  }

  bool contains(const Distribution<S>& p) const {
    if (p.size() != dim_) {
      throw InputError("distribution size does not match feasible set");
    }
    const S eps = scalar_traits<S>::eq_eps();
    switch (kind_) {
      case Kind::kFull:
        return true;
      case Kind::kSwFloor:
      case Kind::kLinear: {
        for (const auto& row : rows_) {
          S lhs = scalar_traits<S>::zero();
          for (std::size_t a = 0; a < dim_; ++a) lhs += row.coeffs[a] * p[a];
          if (lhs < row.rhs - eps) return false;
        }
        return true;
      }
      case Kind::kSupportZero: {
        for (std::size_t a : profiles_) {
          if (p[a] > eps) return false;
        }
        return true;
      }
      case Kind::kSupportPositive: {
        for (std::size_t a : profiles_) {
          if (!scalar_traits<S>::strictly_positive(p[a])) return false;
        }
        return true;
      }
      case Kind::kPureOnly: {
        for (std::size_t a = 0; a < dim_; ++a) {
          if (p[a] >= scalar_traits<S>::one() - eps) return true;
        }
        return false;
      }
      case Kind::kIntersection: {
        for (const auto& child : children_) {
          if (!child.contains(p)) return false;
        }
        return true;
      }
    }
    return false;
  }

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return dim_; }
  bool convex() const { return convex_; }
  bool closed() const { return closed_; }
  const std::optional<std::vector<LinearInequality<S>>>& linear_description() const {
    return description_;
  }
  const std::vector<std::size_t>& profiles() const { return profiles_; }
  const std::vector<FeasibleSet>& children() const { return children_; }
  const std::vector<LinearInequality<S>>& rows() const { return rows_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::kFull: return "full";
      case Kind::kSwFloor: return "sw_floor";
      case Kind::kLinear: return "linear";
      case Kind::kSupportZero: return "support_zero";
      case Kind::kSupportPositive: return "support_positive";
      case Kind::kPureOnly: return "pure_only";
      case Kind::kIntersection: return "intersection";
    }
    return "?";
  }

 private:
  FeasibleSet(Kind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  static std::vector<std::size_t> normalize_profiles(std::size_t dim,
                                                     std::vector<std::size_t> profiles) {
    std::set<std::size_t> seen;
    for (std::size_t a : profiles) {
      if (a >= dim) throw InputError("profile index out of range in constraint");
      seen.insert(a);
    }
    return std::vector<std::size_t>(seen.begin(), seen.end());
  }

  Kind kind_;
  std::size_t dim_;
  std::vector<LinearInequality<S>> rows_;
  std::vector<std::size_t> profiles_;
  std::vector<FeasibleSet> children_;
  bool convex_ = true;
  bool closed_ = true;
  std::optional<std::vector<LinearInequality<S>>> description_;
};

namespace detail {

// Canonical integer form of a row (coeffs..., rhs) for deduplication.
inline std::vector<Rational> normalize_row(std::vector<Rational> row) {
  long long scale = 1;
  for (const Rational& v : row) scale = std::lcm(scale, v.den());
  long long g = 0;
  for (Rational& v : row) {
    v *= Rational(scale);
    long long n = v.num() < 0 ? -v.num() : v.num();
    g = std::gcd(g, n);
  }
  if (g > 1) {
    for (Rational& v : row) v /= Rational(g);
  }
  return row;
}

}  // namespace detail

// Exact feasibility of { p in simplex(k) : rows hold } by Fourier-Motzkin
// elimination. Used for emptiness certificates; sizes stay tiny at desk scale.
inline bool simplex_system_feasible(std::size_t k,
                                    const std::vector<LinearInequality<Rational>>& system) {
  if (k == 0) return false;
  // Substitute p_{k-1} = 1 - sum of the others; keep rows as
  // (c_0 .. c_{k-2}, rhs) meaning c . x >= rhs.
  std::set<std::vector<Rational>> rows;
  auto add_row = [&rows](std::vector<Rational> row) {
    rows.insert(detail::normalize_row(std::move(row)));
  };
  const std::size_t vars = k - 1;
  for (const auto& ineq : system) {
    if (ineq.coeffs.size() != k) throw InputError("bad system dimension");
    std::vector<Rational> row(vars + 1);
    for (std::size_t j = 0; j < vars; ++j) row[j] = ineq.coeffs[j] - ineq.coeffs[k - 1];
    row[vars] = ineq.rhs - ineq.coeffs[k - 1];
    add_row(std::move(row));
  }
  for (std::size_t j = 0; j < vars; ++j) {  // p_j >= 0
    std::vector<Rational> row(vars + 1, Rational(0));
    row[j] = Rational(1);
    add_row(std::move(row));
  }
  {
    // p_{k-1} >= 0  <=>  -sum p_j >= -1
    std::vector<Rational> row(vars + 1, Rational(-1));
    add_row(std::move(row));
  }

  for (std::size_t target = 0; target < vars; ++target) {
    const std::size_t width = vars - target;  // variables left, row length width+1
    std::set<std::vector<Rational>> next;
    std::vector<std::vector<Rational>> pos, neg;
    for (const auto& row : rows) {
      const Rational& c = row[0];
      if (c > Rational(0)) {
        pos.push_back(row);
      } else if (c < Rational(0)) {
        neg.push_back(row);
      } else {
        next.insert(detail::normalize_row(
            std::vector<Rational>(row.begin() + 1, row.end())));
      }
    }
    for (const auto& up : pos) {
      for (const auto& lo : neg) {
        // up: c x0 + ... >= r (c > 0), lo: -c' x0 + ... >= r' (c' > 0)
        // scale and add to eliminate x0.
        std::vector<Rational> combined(width);
        const Rational cp = up[0];
        const Rational cn = -lo[0];
        for (std::size_t j = 1; j <= width; ++j) {
          combined[j - 1] = up[j] * cn + lo[j] * cp;
        }
        next.insert(detail::normalize_row(std::move(combined)));
      }
    }
    rows = std::move(next);
  }
  for (const auto& row : rows) {  // rows are now (rhs): 0 >= rhs
    if (row.back() > Rational(0)) return false;
  }
  return true;
}

}  // namespace correq

#endif  // CORREQ_CONSTRAINTS_HPP_
