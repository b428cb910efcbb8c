// Copyright 2026 The qchan Authors
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

#ifndef QCHAN_MIXTURES_HPP
#define QCHAN_MIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

#include "qchan/capacity.hpp"
#include "qchan/channels.hpp"
#include "qchan/scalar_search.hpp"

namespace qchan {

enum class MinBranch { first, second, tie };

inline std::string_view to_string(MinBranch b) {
  switch (b) {
    case MinBranch::first:
      return "channel1";
    case MinBranch::second:
      return "channel2";
    case MinBranch::tie:
      return "tie";
  }
  return "unknown";
}

// Product-state capacity of a two-branch convex combination: the supremum
// over ensembles of min(chi_1, chi_2), evaluated on the mirror-pair family.
struct MinimaxResult {
  double capacity_bits = 0.0;
  double a_star = 0.5;
  MinBranch min_branch = MinBranch::tie;
  bool certified_by_oracle = false;

  double capacity_first = 0.0;   // single-channel capacities
  double capacity_second = 0.0;
  double a_max_first = 0.5;      // maximizers of each branch curve
  double a_max_second = 0.5;
  std::optional<double> a_cross;  // set when the sup-min sits at a crossing

  double branch_min() const { return std::min(capacity_first, capacity_second); }
  double separation_gap() const { return branch_min() - capacity_bits; }
};

inline constexpr double kDefaultMinimaxResolution = 1e-6;
inline constexpr double kTieTol = 1e-12;

namespace detail {

inline bool is_closed_form_family(const Channel& c) {
  return c.holds<AmplitudeDamping>() || c.holds<Depolarizing>();
}

inline MinBranch smaller_branch(double chi1, double chi2) {
  if (std::abs(chi1 - chi2) <= kTieTol) return MinBranch::tie;
  return chi1 < chi2 ? MinBranch::first : MinBranch::second;
}

}  // namespace detail

// Root of chi_1 - chi_2 strictly between lo and hi (sign change required).
inline double find_crossing(const Channel& first, const Channel& second, double lo, double hi,
                            double resolution = kDefaultMinimaxResolution) {
  auto diff = [&](double a) { return mirror_pair_chi(first, a) - mirror_pair_chi(second, a); };
  return bisect(diff, lo, hi, resolution * 1e-3).x;
}

// min(chi_1, chi_2) is concave in a, so its maximum is either an
// unconstrained maximizer of one branch lying on that branch's binding side
// or the crossing between the two maximizers.
inline MinimaxResult minimax_capacity(const MixedChannelPair& pair,
                                      double resolution = kDefaultMinimaxResolution) {
  validate_pair(pair);
  if (!detail::is_closed_form_family(pair.first) || !detail::is_closed_form_family(pair.second)) {
    throw DomainError("minimax_capacity: unsupported channel variant");
  }
  if (!(resolution > 0.0)) throw DomainError("minimax_capacity: resolution must be positive");

  auto chi1 = [&](double a) { return mirror_pair_chi(pair.first, a); };
  auto chi2 = [&](double a) { return mirror_pair_chi(pair.second, a); };

  MinimaxResult r;
  const auto m1 = golden_section_max(chi1, 0.0, 1.0, resolution);
  const auto m2 = golden_section_max(chi2, 0.0, 1.0, resolution);
  r.capacity_first = m1.value;
  r.capacity_second = m2.value;
  r.a_max_first = m1.x;
  r.a_max_second = m2.x;

  // A zero-weight branch is never used.
  if (pair.weight_first == 1.0 || pair.weight_first == 0.0) {
    const bool first = pair.weight_first == 1.0;
    r.capacity_bits = first ? m1.value : m2.value;
    r.a_star = first ? m1.x : m2.x;
    r.min_branch = first ? MinBranch::first : MinBranch::second;
    return r;
  }

  const double other_at_m1 = chi2(m1.x);
  const double other_at_m2 = chi1(m2.x);
  if (m1.value <= other_at_m1 + kTieTol) {
    r.capacity_bits = std::min(m1.value, other_at_m1);
    r.a_star = m1.x;
    r.min_branch = detail::smaller_branch(m1.value, other_at_m1);
  } else if (m2.value <= other_at_m2 + kTieTol) {
    r.capacity_bits = std::min(m2.value, other_at_m2);
    r.a_star = m2.x;
    r.min_branch = detail::smaller_branch(other_at_m2, m2.value);
  } else {
    const double lo = std::min(m1.x, m2.x);
    const double hi = std::max(m1.x, m2.x);
    const double a = find_crossing(pair.first, pair.second, lo, hi, resolution);
    r.a_cross = a;
    r.a_star = a;
    r.capacity_bits = std::min(chi1(a), chi2(a));
    r.min_branch = MinBranch::tie;
  }
  return r;
}

//=========================================================================
// Homogeneous mixtures
//=========================================================================

// chi_AD(a) decreases with gamma pointwise, so the noisier branch binds.
inline CapacityResult capacity_two_amplitude_damping(double gamma1, double gamma2,
                                                     double tol = kDefaultCapacityTol) {
  detail::check_param(gamma1, "gamma1");
  detail::check_param(gamma2, "gamma2");
  return capacity_amplitude_damping(std::max(gamma1, gamma2), tol);
}

// Both branches share the orthogonal-pair maximizer.
inline CapacityResult capacity_two_depolarizing(double lambda1, double lambda2) {
  detail::check_param(lambda1, "lambda1");
  detail::check_param(lambda2, "lambda2");
  return capacity_depolarizing(std::max(lambda1, lambda2));
}

//=========================================================================
// Monotonicity in gamma
//=========================================================================

namespace detail {

inline void check_interior(double gamma, double a, const char* fn) {
  if (!(gamma > 0.0 && gamma < 1.0) || !(a >= 0.0 && a < 1.0)) {
    throw DomainError(std::string(fn) + ": requires gamma in (0,1) and a in [0,1)");
  }
}

// 2/x^3 atanh(x) - 2/x^2, i.e. ln((1+x)/(1-x))/x^3 - 2/x^2, with a series
// near x = 0 where the two terms cancel.
inline double atanh_cubic_remainder(const AdRadius& r) {
  const double x = r.x;
  if (x < 1e-2) {
    const double x2 = x * x;
    return 2.0 * (1.0 / 3.0 + x2 * (1.0 / 5.0 + x2 * (1.0 / 7.0 + x2 * (1.0 / 9.0 + x2 / 11.0))));
  }
  return log_ratio(r) / (x * x * x) - 2.0 / (x * x);
}

}  // namespace detail

// d(ln2 * chi_AD)/d gamma in nats:
//   -(1-a) ln((a + g(1-a)) / ((1-g)(1-a))) + ((2g-1)(1-a)^2 / x) ln((1+x)/(1-x))
inline double dchi_dgamma(double gamma, double a) {
  detail::check_interior(gamma, a, "dchi_dgamma");
  const double u = 1.0 - a;
  const auto r = detail::ad_radius(gamma, a);
  const double first = -u * std::log((a + gamma * u) / ((1.0 - gamma) * u));
  if (r.x == 0.0) return first;  // gamma = 1/2, a = 0: the second term's factor (2g-1) vanishes
  return first + (2.0 * gamma - 1.0) * u * u / r.x * detail::log_ratio(r);
}

// f(a, g) = ln((a + g(1-a)) / ((1-g)(1-a))) - ((2g-1)(1-a)/x) ln((1+x)/(1-x)),
// so that dchi_dgamma = -(1-a) f.
inline double monotonicity_f(double gamma, double a) {
  detail::check_interior(gamma, a, "monotonicity_f");
  const double u = 1.0 - a;
  const auto r = detail::ad_radius(gamma, a);
  const double first = std::log((a + gamma * u) / ((1.0 - gamma) * u));
  if (r.x == 0.0) return first;
  return first - (2.0 * gamma - 1.0) * u / r.x * detail::log_ratio(r);
}

// df/da = (1-g)/(a + g(1-a)) + 1/(1-a) + (2g-1)/x^3 ln((1+x)/(1-x)) - 2(2g-1)/x^2
inline double monotonicity_df_da(double gamma, double a) {
  detail::check_interior(gamma, a, "monotonicity_df_da");
  const double u = 1.0 - a;
  const auto r = detail::ad_radius(gamma, a);
  return (1.0 - gamma) / (a + gamma * u) + 1.0 / u +
         (2.0 * gamma - 1.0) * detail::atanh_cubic_remainder(r);
}

}  // namespace qchan

#endif  // QCHAN_MIXTURES_HPP
