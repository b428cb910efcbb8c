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

#ifndef QCHAN_CAPACITY_HPP
#define QCHAN_CAPACITY_HPP

#include <cmath>
#include <numbers>
#include <string_view>

#include "qchan/channels.hpp"
#include "qchan/linalg2.hpp"
#include "qchan/scalar_search.hpp"

namespace qchan {

//=========================================================================
// Holevo quantity
//=========================================================================

// chi = S(sum_j p_j Phi(rho_j)) - sum_j p_j S(Phi(rho_j)), in bits.
inline double holevo_chi(const Channel& channel, const Ensemble& ensemble) {
  validate_channel(channel);
  double a = 0.0;
  Complex b{0.0, 0.0};
  double mean_entropy = 0.0;
  for (const auto& e : ensemble) {
    const QubitState out = apply(channel, e.state);
    a += e.p * out.a;
    b += e.p * out.b;
    mean_entropy += e.p * von_neumann_entropy(out);
  }
  return von_neumann_entropy(QubitState{a, b}) - mean_entropy;
}

//=========================================================================
// Amplitude damping on the mirror-pair family
//=========================================================================
//
// The ensemble {1/2 rho_a, 1/2 rho'_a}, with rho_a pure and rho'_a its image
// under b -> -b, averages to diag(a, 1-a). Its output is therefore diagonal
// with lower entry (1-a)(1-gamma), and each pure output has eigenvalues
// (1 +- x)/2 with x = sqrt(1 - 4 gamma (1-gamma) (1-a)^2). Hence
//
//   chi_AD(a) = H((1-a)(1-gamma)) - H((1-x)/2).
//
// All derivatives below are natural-log expressions; chi_ad_derivative
// divides by ln 2 so that it is the derivative of the bit-valued curve.

namespace detail {

inline void check_param(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + " = " + std::to_string(x) + " outside [0,1]");
  }
}

// 4 gamma (1-gamma) (1-a)^2, the deficit 1 - x^2.
inline double ad_deficit(double gamma, double a) {
  const double u = 1.0 - a;
  return 4.0 * gamma * (1.0 - gamma) * u * u;
}

struct AdRadius {
  double x;          // output Bloch radius of a pure input
  double one_minus;  // 1 - x, formed without cancellation
};

inline AdRadius ad_radius(double gamma, double a) {
  const double t = ad_deficit(gamma, a);
  const double x = std::sqrt(std::max(0.0, 1.0 - t));
  return {x, t / (1.0 + x)};
}

// ln((1+x)/(1-x)) given 1-x separately.
inline double log_ratio(const AdRadius& r) {
  return std::log1p(r.x) - std::log(r.one_minus);
}

}  // namespace detail

inline double chi_ad_curve(double gamma, double a) {
  detail::check_param(gamma, "gamma");
  detail::check_param(a, "a");
  const auto r = detail::ad_radius(gamma, a);
  return binary_entropy((1.0 - a) * (1.0 - gamma)) - binary_entropy(0.5 * r.one_minus);
}

// d chi_AD / da in bits per unit a:
//   [-(1-g) ln((a + g(1-a)) / ((1-g)(1-a)))
//    + (2 g (1-g) (1-a) / x) ln((1+x)/(1-x))] / ln 2
inline double chi_ad_derivative(double gamma, double a) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("chi_ad_derivative: gamma must lie in (0,1)");
  }
  if (!(a >= 0.0 && a < 1.0)) {
    throw DomainError("chi_ad_derivative: a must lie in [0,1)");
  }
  const double u = 1.0 - a;
  const auto r = detail::ad_radius(gamma, a);
  const double first = -(1.0 - gamma) * std::log((a + gamma * u) / ((1.0 - gamma) * u));
  const double second = 2.0 * gamma * (1.0 - gamma) * u / r.x * detail::log_ratio(r);
  return (first + second) / std::numbers::ln2;
}

//=========================================================================
// Capacity solvers
//=========================================================================

enum class CapacityMethod { root_bisection, golden_section, closed_form };

inline std::string_view to_string(CapacityMethod m) {
  switch (m) {
    case CapacityMethod::root_bisection:
      return "root_bisection";
    case CapacityMethod::golden_section:
      return "golden_section";
    case CapacityMethod::closed_form:
      return "closed_form";
  }
  return "unknown";
}

struct CapacityResult {
  double a_max = 0.5;
  double capacity_bits = 0.0;
  double residual = 0.0;  // |chi'(a_max)|
  int iterations = 0;
  CapacityMethod method = CapacityMethod::closed_form;
};

inline constexpr double kDefaultCapacityTol = 1e-10;
inline constexpr double kUpperBracketGap = 1e-9;

// Maximizes chi_AD(a) by bisecting its derivative on [1/2, 1 - 1e-9].
// chi_AD is concave with chi'(1/2) > 0 and chi' -> -inf as a -> 1, so the
// bracket always holds a sign change.
inline CapacityResult capacity_amplitude_damping(double gamma,
                                                 double tol = kDefaultCapacityTol) {
  detail::check_param(gamma, "gamma");
  if (!(tol > 0.0)) throw DomainError("capacity tolerance must be positive");
  if (gamma == 0.0) return {0.5, 1.0, 0.0, 0, CapacityMethod::closed_form};
  if (gamma == 1.0) return {0.5, 0.0, 0.0, 0, CapacityMethod::closed_form};

  auto deriv = [gamma](double a) { return chi_ad_derivative(gamma, a); };
  const auto root = bisect(deriv, 0.5, 1.0 - kUpperBracketGap, tol);
  return {root.x, chi_ad_curve(gamma, root.x), std::abs(deriv(root.x)), root.iterations,
          CapacityMethod::root_bisection};
}

// 1 - H(lambda/2), attained by an orthogonal pair.
inline CapacityResult capacity_depolarizing(double lambda) {
  detail::check_param(lambda, "lambda");
  return {0.5, 1.0 - binary_entropy(0.5 * lambda), 0.0, 0, CapacityMethod::closed_form};
}

// Depolarizing chi on the same mirror-pair family: H((1-l)a + l/2) - H(l/2).
inline double chi_dep_curve(double lambda, double a) {
  detail::check_param(lambda, "lambda");
  detail::check_param(a, "a");
  return binary_entropy((1.0 - lambda) * a + 0.5 * lambda) - binary_entropy(0.5 * lambda);
}

// Mirror-pair chi curve for either closed-form channel family.
inline double mirror_pair_chi(const Channel& channel, double a) {
  if (const auto* ad = channel.get_if<AmplitudeDamping>()) return chi_ad_curve(ad->gamma, a);
  if (const auto* dep = channel.get_if<Depolarizing>()) return chi_dep_curve(dep->lambda, a);
  throw DomainError("mirror_pair_chi: only amplitude damping and depolarizing are supported");
}

inline CapacityResult capacity(const Channel& channel, double tol = kDefaultCapacityTol) {
  if (const auto* ad = channel.get_if<AmplitudeDamping>()) {
    return capacity_amplitude_damping(ad->gamma, tol);
  }
  if (const auto* dep = channel.get_if<Depolarizing>()) {
    return capacity_depolarizing(dep->lambda);
  }
  throw DomainError("capacity: only amplitude damping and depolarizing are supported");
}

}  // namespace qchan

#endif  // QCHAN_CAPACITY_HPP
