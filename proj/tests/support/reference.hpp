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

// Test-only reference computations. Nothing here calls into the closed-form
// curves or solvers it is used to check.

#ifndef QCHAN_TESTS_REFERENCE_HPP
#define QCHAN_TESTS_REFERENCE_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "qchan/channels.hpp"
#include "qchan/linalg2.hpp"

namespace qchan::reference {

// Frozen values from tests/oracles/derive_fixtures.py (mpmath, 50 digits).
inline constexpr double kH025 = 0.81127812445913286391;
inline constexpr double kOneMinusH025 = 0.18872187554086713609;
inline constexpr double kOneMinusH035 = 0.065931944624508993992;
inline constexpr double kChiAdHalfHalf = 0.45669922179386297971;
inline constexpr double kChiDepHalfThreeQuarters = 0.14315587846583210063;
inline constexpr double kCapacityAdHalf = 0.47172939059849483213;  // grid step 1e-6
inline constexpr double kAmaxAdHalf = 0.596105;                    // grid argmax

// -sum p log2 p in long double.
inline long double binary_entropy_ld(long double p) {
  auto term = [](long double x) { return x <= 0.0L ? 0.0L : -x * std::log2(x); };
  return term(p) + term(1.0L - p);
}

// Eigenvalues via the characteristic polynomial tr^2/4 - det, long double.
inline std::pair<long double, long double> eigen_charpoly(const Herm2& m) {
  const long double tr = static_cast<long double>(m.m00) + m.m11;
  const long double det = static_cast<long double>(m.m00) * m.m11 -
                          static_cast<long double>(std::norm(m.m01));
  const long double disc = std::max(0.0L, tr * tr / 4.0L - det);
  return {tr / 2.0L + std::sqrt(disc), tr / 2.0L - std::sqrt(disc)};
}

inline long double entropy_ld(const QubitState& s) {
  return binary_entropy_ld(eigen_charpoly(s.matrix()).second);
}

// Holevo quantity from explicit Kraus application, long double entropies.
inline long double holevo_kraus(const std::vector<Mat2>& kraus,
                                const std::vector<std::pair<double, QubitState>>& ensemble) {
  auto act = [&](const QubitState& s) {
    const Mat2 rho = to_mat2(s);
    Mat2 out;
    for (const auto& e : kraus) out = out + e * rho * e.adjoint();
    return QubitState{out(0, 0).real(), out(0, 1)};
  };
  QubitState mean{0.0, {0.0, 0.0}};
  long double avg = 0.0L;
  for (const auto& [p, s] : ensemble) {
    const auto o = act(s);
    mean.a += p * o.a;
    mean.b += p * o.b;
    avg += p * entropy_ld(o);
  }
  return entropy_ld(mean) - avg;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double second_difference(const std::function<double(double)>& f, double x, double h) {
  return f(x + h) - 2.0 * f(x) + f(x - h);
}

struct GridMax {
  double x;
  double value;
};

// Exhaustive maximum of f over lo, lo + step, ..., hi.
inline GridMax grid_max(const std::function<double(double)>& f, double lo, double hi,
                        double step) {
  GridMax best{lo, f(lo)};
  const auto n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
  for (long long i = 1; i <= n; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

//=========================================================================
// Random generators
//=========================================================================

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  // Uniform in the Bloch ball.
  QubitState mixed_state() {
    for (;;) {
      const double x = uniform(-1, 1), y = uniform(-1, 1), z = uniform(-1, 1);
      if (x * x + y * y + z * z <= 1.0) return {0.5 * (1.0 + z), Complex(0.5 * x, 0.5 * y)};
    }
  }

  QubitState pure_state() {
    return QubitState::pure_phase(uniform(), uniform(0.0, 2.0 * 3.14159265358979323846));
  }

  // 1-4 states, Dirichlet(1) weights.
  Ensemble ensemble(bool pure = false) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng_);
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) {
      x = -std::log(uniform(1e-12, 1.0));
      total += x;
    }
    std::vector<EnsembleEntry> entries;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double p = i + 1 == n ? 1.0 - acc : w[i] / total;
      acc += p;
      entries.push_back({p, pure ? pure_state() : mixed_state()});
    }
    return Ensemble(std::move(entries));
  }

  Channel channel() {
    if (uniform() < 0.5) return AmplitudeDamping{uniform()};
    return Depolarizing{uniform()};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qchan::reference

#endif  // QCHAN_TESTS_REFERENCE_HPP
