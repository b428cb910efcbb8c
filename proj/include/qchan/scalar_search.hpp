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

#ifndef QCHAN_SCALAR_SEARCH_HPP
#define QCHAN_SCALAR_SEARCH_HPP

#include <cmath>
#include <concepts>

#include "qchan/linalg2.hpp"

namespace qchan {

struct ScalarRoot {
  double x;
  int iterations;
};

/// Bisection for a sign change of `f` on [lo, hi]. Stops once the bracket is
/// narrower than `width_tol` or `f` vanishes exactly at the midpoint.
/// Throws SolverError when f(lo) and f(hi) share a sign.
template <std::invocable<double> F>
ScalarRoot bisect(F&& f, double lo, double hi, double width_tol, int max_iter = 200) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0};
  if (f_hi == 0.0) return {hi, 0};
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw SolverError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  int it = 0;
  while (hi - lo > width_tol && it < max_iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    ++it;
    if (f_mid == 0.0) return {mid, it};
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), it};
}

struct ScalarMax {
  double x;
  double value;
  int iterations;
};

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
/// The returned point is the best of the final bracket and both endpoints,
/// so plateaus and boundary maxima are reported correctly.
template <std::invocable<double> F>
ScalarMax golden_section_max(F&& f, double lo, double hi, double width_tol,
                             int max_iter = 500) {
  constexpr double kInvPhi = 0.6180339887498948482;
  const double a0 = lo;
  const double b0 = hi;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (hi - lo > width_tol && it < max_iter) {
    ++it;
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  ScalarMax best{0.5 * (lo + hi), f(0.5 * (lo + hi)), it};
  for (double x : {a0, b0, c, d}) {
    const double v = f(x);
    if (v > best.value) best = {x, v, it};
  }
  return best;
}

}  // namespace qchan

#endif  // QCHAN_SCALAR_SEARCH_HPP
