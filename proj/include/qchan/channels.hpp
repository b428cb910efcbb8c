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

#ifndef QCHAN_CHANNELS_HPP
#define QCHAN_CHANNELS_HPP

#include <array>
#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qchan/linalg2.hpp"

namespace qchan {

//=========================================================================
// Dense 2x2 complex matrices (Kraus operators)
//=========================================================================

struct Mat2 {
  // row-major: (0,0) (0,1) (1,0) (1,1)
  std::array<Complex, 4> v{};

  Complex& operator()(int r, int c) { return v[2 * r + c]; }
  const Complex& operator()(int r, int c) const { return v[2 * r + c]; }

  static Mat2 identity() { return {{Complex(1), Complex(0), Complex(0), Complex(1)}}; }

  Mat2 adjoint() const {
    return {{std::conj(v[0]), std::conj(v[2]), std::conj(v[1]), std::conj(v[3])}};
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 out;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        out(r, c) = x(r, 0) * y(0, c) + x(r, 1) * y(1, c);
      }
    }
    return out;
  }

  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    Mat2 out;
    for (int i = 0; i < 4; ++i) out.v[i] = x.v[i] + y.v[i];
    return out;
  }

  friend Mat2 operator*(Complex s, const Mat2& x) {
    Mat2 out;
    for (int i = 0; i < 4; ++i) out.v[i] = s * x.v[i];
    return out;
  }
};

inline Mat2 to_mat2(const QubitState& s) {
  return {{Complex(s.a), s.b, std::conj(s.b), Complex(1.0 - s.a)}};
}

//=========================================================================
// Channel family
//=========================================================================

struct AmplitudeDamping {
  double gamma;
};

struct Depolarizing {
  double lambda;
};

struct GeneralKraus {
  std::vector<Mat2> kraus;
};

// One of the channel families above. Wrapping the variant keeps argument-
// dependent lookup inside qchan, so apply(channel, state) never meets
// std::apply.
class Channel {
 public:
  using Variant = std::variant<AmplitudeDamping, Depolarizing, GeneralKraus>;

  Channel(AmplitudeDamping c) : v_(c) {}  // NOLINT(google-explicit-constructor)
  Channel(Depolarizing c) : v_(c) {}  // NOLINT(google-explicit-constructor)
  Channel(GeneralKraus c) : v_(std::move(c)) {}  // NOLINT(google-explicit-constructor)

  const Variant& variant() const { return v_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  template <class T>
  bool holds() const {
    return std::holds_alternative<T>(v_);
  }

 private:
  Variant v_;
};

namespace detail {

inline void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + " = " + std::to_string(x) + " outside [0,1]");
  }
}

}  // namespace detail

// max |sum_i E_i^* E_i - I|, entrywise.
inline double completeness_defect(const std::vector<Mat2>& kraus) {
  Mat2 sum;
  for (const auto& e : kraus) sum = sum + e.adjoint() * e;
  const Mat2 id = Mat2::identity();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(sum.v[i] - id.v[i]));
  return worst;
}

inline void validate_channel(const Channel& channel) {
  std::visit(
      [](const auto& ch) {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, AmplitudeDamping>) {
          detail::check_unit_interval(ch.gamma, "amplitude damping gamma");
        } else if constexpr (std::is_same_v<T, Depolarizing>) {
          detail::check_unit_interval(ch.lambda, "depolarizing lambda");
        } else {
          if (ch.kraus.empty() || completeness_defect(ch.kraus) > 1e-10) {
            throw DomainError("GeneralKraus: operators violate sum E^*E = I");
          }
        }
      },
      channel.variant());
}

// E0 = diag(1, sqrt(1-gamma)), E1 = sqrt(gamma) |0><1|.
inline std::vector<Mat2> kraus_amplitude_damping(double gamma) {
  detail::check_unit_interval(gamma, "amplitude damping gamma");
  Mat2 e0;
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - gamma);
  Mat2 e1;
  e1(0, 1) = std::sqrt(gamma);
  return {e0, e1};
}

// Pauli form {sqrt(1-3l/4) I, sqrt(l/4) X, sqrt(l/4) Y, sqrt(l/4) Z}.
inline std::vector<Mat2> kraus_depolarizing(double lambda) {
  detail::check_unit_interval(lambda, "depolarizing lambda");
  const double c0 = std::sqrt(1.0 - 0.75 * lambda);
  const double c = std::sqrt(0.25 * lambda);
  const Complex i(0.0, 1.0);
  Mat2 id = Mat2::identity();
  Mat2 x{{Complex(0), Complex(1), Complex(1), Complex(0)}};
  Mat2 y{{Complex(0), -i, i, Complex(0)}};
  Mat2 z{{Complex(1), Complex(0), Complex(0), Complex(-1)}};
  return {Complex(c0) * id, Complex(c) * x, Complex(c) * y, Complex(c) * z};
}

// Channel action in (a, b) coordinates.
//   AD:  (a + (1-a) gamma, b sqrt(1-gamma))
//   Dep: ((1-lambda) a + lambda/2, (1-lambda) b), from (1-l) rho + l I/2
//   Kraus: sum_i E_i rho E_i^*
inline QubitState apply(const Channel& channel, const QubitState& state) {
  return std::visit(
      [&state](const auto& ch) -> QubitState {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, AmplitudeDamping>) {
          return {state.a + (1.0 - state.a) * ch.gamma, state.b * std::sqrt(1.0 - ch.gamma)};
        } else if constexpr (std::is_same_v<T, Depolarizing>) {
          return {(1.0 - ch.lambda) * state.a + 0.5 * ch.lambda, (1.0 - ch.lambda) * state.b};
        } else {
          const Mat2 rho = to_mat2(state);
          Mat2 out;
          for (const auto& e : ch.kraus) out = out + e * rho * e.adjoint();
          return {out(0, 0).real(), out(0, 1)};
        }
      },
      channel.variant());
}

inline QubitState apply_checked(const Channel& channel, const QubitState& state) {
  validate_channel(channel);
  validate_state(state);
  return apply(channel, state);
}

// Output eigenvalues of the amplitude-damping channel,
//   1/2 (1 +- sqrt((1 + 2a(gamma-1) - 2gamma)^2 - 4|b|^2 (gamma-1))).
inline EigenPair output_eigenvalues_ad(double gamma, const QubitState& state) {
  detail::check_unit_interval(gamma, "amplitude damping gamma");
  validate_state(state);
  const double a = state.a;
  const double t = 1.0 + 2.0 * a * (gamma - 1.0) - 2.0 * gamma;
  const double radicand = t * t - 4.0 * std::norm(state.b) * (gamma - 1.0);
  const double root = std::sqrt(std::max(0.0, radicand));
  return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

//=========================================================================
// Mirror symmetrization
//=========================================================================

// Replaces each (p, (a, b)) by (p/2, (a, b)) and (p/2, (a, -b)). Entries on
// the real axis pass through; entries equal within kTolState are merged.
inline Ensemble symmetrize(const Ensemble& ensemble) {
  std::vector<EnsembleEntry> out;
  auto push = [&out](double p, const QubitState& s) {
    for (auto& e : out) {
      if (std::abs(e.state.a - s.a) <= kTolState && std::abs(e.state.b - s.b) <= kTolState) {
        e.p += p;
        return;
      }
    }
    out.push_back({p, s});
  };
  for (const auto& e : ensemble) {
    if (std::abs(e.state.b) <= kTolState) {
      push(e.p, e.state);
    } else {
      push(0.5 * e.p, e.state);
      push(0.5 * e.p, e.state.mirrored());
    }
  }
  return Ensemble(std::move(out), 2 * kMaxEnsembleStates);
}

//=========================================================================
// Convex combination of two memoryless channels
//=========================================================================

struct MixedChannelPair {
  Channel first;
  Channel second;
  double weight_first = 0.5;  // branch probability; second gets 1 - weight_first

  double weight_second() const { return 1.0 - weight_first; }
};

inline void validate_pair(const MixedChannelPair& pair) {
  validate_channel(pair.first);
  validate_channel(pair.second);
  detail::check_unit_interval(pair.weight_first, "mixture weight");
}

}  // namespace qchan

#endif  // QCHAN_CHANNELS_HPP
