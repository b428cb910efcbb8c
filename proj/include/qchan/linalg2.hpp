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

#ifndef QCHAN_LINALG2_HPP
#define QCHAN_LINALG2_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qchan {

using Complex = std::complex<double>;

// Validation tolerances for states and probability vectors.
inline constexpr double kTolState = 1e-9;
inline constexpr double kTolProb = 1e-9;

// Carathéodory bound d^2 for a qubit.
inline constexpr std::size_t kMaxEnsembleStates = 4;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//=========================================================================
// 2x2 Hermitian matrices
//=========================================================================

// Hermitian 2x2 matrix; m10 is the conjugate of m01 and is never stored.
struct Herm2 {
  double m00 = 0.0;
  double m11 = 0.0;
  Complex m01{0.0, 0.0};

  double trace() const { return m00 + m11; }
  double det() const { return m00 * m11 - std::norm(m01); }
};

struct EigenPair {
  double upper;  // larger eigenvalue
  double lower;
};

// Closed-form eigenvalues. The half gap is formed from the traceless part
// directly, so the radicand is a sum of squares; tiny negative values from
// the alternative tr^2/4 - det form never arise.
inline EigenPair eigenvalues_herm2(const Herm2& m) {
  const double half_trace = 0.5 * (m.m00 + m.m11);
  const double half_diff = 0.5 * (m.m00 - m.m11);
  const double half_gap = std::sqrt(std::max(0.0, half_diff * half_diff + std::norm(m.m01)));
  return {half_trace + half_gap, half_trace - half_gap};
}

//=========================================================================
// Entropies (bits)
//=========================================================================

namespace detail {

// -p log2 p with the 0 log 0 = 0 convention taken explicitly.
inline double xlog2x_neg(double p) {
  if (p <= 0.0) return 0.0;
  return -p * std::log2(p);
}

}  // namespace detail

inline double binary_entropy(double p) {
  if (!(p >= -kTolState && p <= 1.0 + kTolState)) {
    throw DomainError("binary_entropy: probability " + std::to_string(p) +
                      " outside [0,1]");
  }
  p = std::clamp(p, 0.0, 1.0);
  if (p == 0.0 || p == 1.0) return 0.0;
  if (p == 0.5) return 1.0;
  // Evaluate on the smaller branch so H(p) and H(1-p) share rounding.
  const double lo = p < 0.5 ? p : 1.0 - p;
  return detail::xlog2x_neg(lo) - (1.0 - lo) * std::log1p(-lo) / std::numbers::ln2;
}

inline double von_neumann_entropy(const Herm2& m) {
  if (std::abs(m.trace() - 1.0) > kTolState) {
    throw DomainError("von_neumann_entropy: trace " + std::to_string(m.trace()) +
                      " differs from 1");
  }
  const auto eig = eigenvalues_herm2(m);
  if (eig.lower < -kTolState) {
    throw DomainError("von_neumann_entropy: negative eigenvalue " +
                      std::to_string(eig.lower));
  }
  return binary_entropy(std::clamp(eig.lower, 0.0, 1.0));
}

//=========================================================================
// Qubit states in the (a, b) parameterization
//=========================================================================

// rho = [[a, b], [conj(b), 1 - a]]
struct QubitState {
  double a = 1.0;
  Complex b{0.0, 0.0};

  // Pure state on the real-b meridian with the given sign of b.
  static QubitState pure(double a, double sign = 1.0) {
    const double mag = std::sqrt(std::max(0.0, a * (1.0 - a)));
    return {a, Complex(sign < 0.0 ? -mag : mag, 0.0)};
  }

  // Pure state with coherence sqrt(a(1-a)) e^{i phase}.
  static QubitState pure_phase(double a, double phase) {
    return {a, std::polar(std::sqrt(std::max(0.0, a * (1.0 - a))), phase)};
  }

  Herm2 matrix() const { return {a, 1.0 - a, b}; }

  // (a - 1/2)^2 + |b|^2 - 1/4; zero on the pure-state boundary.
  double ball_excess() const { return (a - 0.5) * (a - 0.5) + std::norm(b) - 0.25; }

  bool is_valid(double tol = kTolState) const {
    return std::isfinite(a) && std::isfinite(b.real()) && std::isfinite(b.imag()) &&
           a >= -tol && a <= 1.0 + tol && ball_excess() <= tol;
  }

  bool is_pure(double tol = kTolState) const {
    return std::abs(std::norm(b) - a * (1.0 - a)) <= tol;
  }

  QubitState mirrored() const { return {a, -b}; }

  friend bool operator==(const QubitState&, const QubitState&) = default;
};

inline void validate_state(const QubitState& s) {
  if (!s.is_valid()) {
    throw DomainError("QubitState(a=" + std::to_string(s.a) +
                      ") lies outside the Poincare ball");
  }
}

inline double von_neumann_entropy(const QubitState& s) {
  return von_neumann_entropy(s.matrix());
}

//=========================================================================
// Ensembles
//=========================================================================

struct EnsembleEntry {
  double p;
  QubitState state;
};

// A finite ensemble {p_j, rho_j}. Probabilities are validated on
// construction; the length cap is kMaxEnsembleStates unless the caller
// asks for the relaxed cap used by transient symmetrized ensembles.
class Ensemble {
 public:
  Ensemble(std::initializer_list<EnsembleEntry> entries)
      : Ensemble(std::vector<EnsembleEntry>(entries)) {}

  explicit Ensemble(std::vector<EnsembleEntry> entries,
                    std::size_t max_states = kMaxEnsembleStates)
      : entries_(std::move(entries)) {
    if (entries_.empty() || entries_.size() > max_states) {
      throw DomainError("Ensemble: needs between 1 and " + std::to_string(max_states) +
                        " states, got " + std::to_string(entries_.size()));
    }
    double total = 0.0;
    for (const auto& e : entries_) {
      if (!(e.p >= 0.0) || !std::isfinite(e.p)) {
        throw DomainError("Ensemble: negative or non-finite probability");
      }
      validate_state(e.state);
      total += e.p;
    }
    if (std::abs(total - 1.0) > kTolProb) {
      throw DomainError("Ensemble: probabilities sum to " + std::to_string(total));
    }
  }

  std::size_t size() const { return entries_.size(); }
  const EnsembleEntry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<EnsembleEntry>& entries() const { return entries_; }

 private:
  std::vector<EnsembleEntry> entries_;
};

// Probability-weighted average state.
inline QubitState mix(const Ensemble& ensemble) {
  double a = 0.0;
  Complex b{0.0, 0.0};
  for (const auto& e : ensemble) {
    a += e.p * e.state.a;
    b += e.p * e.state.b;
  }
  return {a, b};
}

}  // namespace qchan

#endif  // QCHAN_LINALG2_HPP
