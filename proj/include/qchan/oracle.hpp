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

// Brute-force certification of capacities over discretized ensembles.
//
// The search space is every ensemble of at most n_states distinct grid
// states with probabilities k/prob_grid, k >= 1. Pure inputs are sampled at
// a = i/(a_grid-1) with b = sqrt(a(1-a)) e^{i phi}; phi is {0, pi} when
// restrict_real_b is set and 2 pi k/phase_grid otherwise.
//
// Ensembles are visited depth-first in lexicographic order of the key
// (i1, k1, i2, k2, ...) with i1 < i2 < ..., and ties keep the first visited.
// Unless `exhaustive` is set, subtrees are skipped when an upper bound on
// every completion falls below the incumbent. The bound comes from Klein's
// inequality: for any full-rank sigma0,
//
//   chi({p_j, rho_j}) <= sum_j p_j D(Phi(rho_j) || sigma0),
//
// and min(chi_1, chi_2) <= t chi_1 + (1-t) chi_2. Skipped subtrees contain
// no ensemble at or above the incumbent, so the returned value and argmax
// are those of plain enumeration.

#ifndef QCHAN_ORACLE_HPP
#define QCHAN_ORACLE_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qchan/capacity.hpp"
#include "qchan/channels.hpp"
#include "qchan/linalg2.hpp"
#include "qchan/mixtures.hpp"

namespace qchan {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleConfig {
  int n_states = 4;
  int a_grid = 101;
  int phase_grid = 8;  // only used when restrict_real_b is false
  int prob_grid = 20;
  bool restrict_real_b = true;
  std::uint64_t budget = 100'000'000;  // ensemble evaluations
  bool exhaustive = false;
  unsigned threads = 1;
};

struct OracleResult {
  double value = 0.0;
  Ensemble ensemble{{1.0, QubitState{}}};
  std::uint64_t evaluations = 0;
  double search_size = 0.0;  // number of ensembles in the grid
};

inline void validate_oracle_config(const OracleConfig& c) {
  if (c.n_states < 1 || c.n_states > static_cast<int>(kMaxEnsembleStates)) {
    throw DomainError("oracle: n_states must lie in [1,4]");
  }
  if (c.a_grid < 2 || c.prob_grid < 2 || (!c.restrict_real_b && c.phase_grid < 2)) {
    throw DomainError("oracle: every grid needs at least 2 points");
  }
  if (c.threads == 0) throw DomainError("oracle: threads must be positive");
}

// Grid of pure input states, deduplicated at a in {0, 1} where b = 0.
inline std::vector<QubitState> oracle_state_grid(const OracleConfig& c) {
  std::vector<QubitState> states;
  const int phases = c.restrict_real_b ? 2 : c.phase_grid;
  for (int i = 0; i < c.a_grid; ++i) {
    const double a = static_cast<double>(i) / (c.a_grid - 1);
    const bool pole = i == 0 || i == c.a_grid - 1;
    for (int k = 0; k < (pole ? 1 : phases); ++k) {
      const double phase = 2.0 * std::numbers::pi * k / phases;
      states.push_back(c.restrict_real_b ? QubitState::pure(a, k == 0 ? 1.0 : -1.0)
                                         : QubitState::pure_phase(a, phase));
    }
  }
  return states;
}

// sum_{k=1}^{n} C(N, k) C(G-1, k-1)
inline double oracle_search_size(std::size_t n_grid_states, const OracleConfig& c) {
  auto choose = [](double n, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r = r * (n - j) / (j + 1);
    return r;
  };
  double total = 0.0;
  for (int k = 1; k <= c.n_states; ++k) {
    total += choose(static_cast<double>(n_grid_states), k) * choose(c.prob_grid - 1, k - 1);
  }
  return total;
}

namespace detail {

struct Bloch {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Bloch to_bloch(const QubitState& s) {
  return {2.0 * s.b.real(), 2.0 * s.b.imag(), 2.0 * s.a - 1.0};
}

inline double entropy_of_radius(double r) {
  return binary_entropy(0.5 * (1.0 - std::min(r, 1.0)));
}

// Per-channel tables over the state grid.
struct ChannelTable {
  std::vector<Bloch> out;        // output Bloch vectors
  std::vector<double> entropy;   // output entropies (bits)
};

inline ChannelTable tabulate(const Channel& ch, const std::vector<QubitState>& grid) {
  ChannelTable t;
  t.out.reserve(grid.size());
  t.entropy.reserve(grid.size());
  for (const auto& s : grid) {
    const QubitState o = apply(ch, s);
    t.out.push_back(to_bloch(o));
    t.entropy.push_back(von_neumann_entropy(o));
  }
  return t;
}

// D(sigma_i || sigma0) in bits for every grid output, sigma0 given by its
// Bloch vector. sigma0 is pulled inside radius 1 - 1e-9 to stay full rank;
// the bound holds for any full-rank reference.
inline std::vector<double> divergences(const ChannelTable& t, Bloch ref) {
  double r0 = std::sqrt(ref.x * ref.x + ref.y * ref.y + ref.z * ref.z);
  constexpr double kMaxRadius = 1.0 - 1e-9;
  if (r0 > kMaxRadius) {
    const double s = kMaxRadius / r0;
    ref = {ref.x * s, ref.y * s, ref.z * s};
    r0 = kMaxRadius;
  }
  const double alpha = 0.5 * std::log((1.0 - r0) * (1.0 + r0) / 4.0);
  const double beta = r0 > 0.0 ? std::atanh(r0) / r0 : 0.0;
  std::vector<double> d(t.out.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& v = t.out[i];
    const double proj = v.x * ref.x + v.y * ref.y + v.z * ref.z;
    d[i] = -t.entropy[i] - (alpha + beta * proj) / std::numbers::ln2;
  }
  return d;
}

// Divergences against the better of `start` and a Blahut-Arimoto estimate of
// the capacity-achieving output mean. Smaller max divergence is a tighter bound.
inline std::vector<double> refined_divergences(const ChannelTable& t, Bloch start,
                                               int iterations = 400) {
  std::vector<double> best = divergences(t, start);
  double best_max = *std::max_element(best.begin(), best.end());
  const std::size_t n = t.out.size();
  std::vector<double> q(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < iterations; ++it) {
    Bloch ref;
    for (std::size_t i = 0; i < n; ++i) {
      ref.x += q[i] * t.out[i].x;
      ref.y += q[i] * t.out[i].y;
      ref.z += q[i] * t.out[i].z;
    }
    auto d = divergences(t, ref);
    const double m = *std::max_element(d.begin(), d.end());
    if (m < best_max) {
      best_max = m;
      best = d;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      q[i] *= std::exp2(d[i] - m);
      total += q[i];
    }
    for (auto& x : q) x /= total;
  }
  return best;
}

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  std::array<int, 2 * kMaxEnsembleStates> key{};  // i1, k1, i2, k2, ...
  int length = 0;                                 // number of states

  bool valid() const { return length > 0; }

  // Higher value wins; equal values keep the lexicographically smaller key.
  bool better_than(const Candidate& o) const {
    if (!o.valid()) return valid();
    if (value != o.value) return value > o.value;
    return std::lexicographical_compare(key.begin(), key.begin() + 2 * length, o.key.begin(),
                                        o.key.begin() + 2 * o.length);
  }
};

// Exhaustive / pruned search over the grid for the min over channels of chi.
class GridSearch {
 public:
  GridSearch(std::vector<ChannelTable> tables, const OracleConfig& config)
      : tables_(std::move(tables)), config_(config), n_(tables_.front().out.size()) {}

  // Value of the ensemble described by the first `len` (index, quanta) pairs.
  double evaluate(const int* idx, const int* quanta, int len) const {
    const double g = config_.prob_grid;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& t : tables_) {
      double x = 0.0, y = 0.0, z = 0.0, e = 0.0;
      for (int j = 0; j < len; ++j) {
        const auto& v = t.out[idx[j]];
        const double k = quanta[j];
        x += k * v.x;
        y += k * v.y;
        z += k * v.z;
        e += k * t.entropy[idx[j]];
      }
      const double r = std::sqrt(x * x + y * y + z * z) / g;
      worst = std::min(worst, entropy_of_radius(r) - e / g);
    }
    return worst;
  }

  // Best ensemble among all with at most two states; seeds the threshold.
  Candidate seed() {
    Candidate best;
    const int g = config_.prob_grid;
    const bool all_splits = static_cast<double>(n_) * n_ * g / 2.0 <= config_.budget / 4.0;
    int idx[2];
    int q[2];
    for (std::size_t i = 0; i < n_; ++i) {
      idx[0] = static_cast<int>(i);
      q[0] = g;
      consider(best, idx, q, 1);
      if (config_.n_states < 2) continue;
      for (std::size_t j = i + 1; j < n_; ++j) {
        idx[1] = static_cast<int>(j);
        for (int k = 1; k < g; ++k) {
          if (!all_splits && k != g / 2) continue;
          q[0] = k;
          q[1] = g - k;
          consider(best, idx, q, 2);
        }
      }
    }
    return best;
  }

  // Installs the pruning bound from a reference ensemble.
  void set_bound(const Candidate& reference) {
    const double g = config_.prob_grid;
    std::vector<std::vector<double>> per_channel;
    std::vector<std::vector<double>> per_channel_refined;
    for (const auto& t : tables_) {
      Bloch ref;
      for (int j = 0; j < reference.length; ++j) {
        const auto& v = t.out[reference.key[2 * j]];
        const double p = reference.key[2 * j + 1] / g;
        ref.x += p * v.x;
        ref.y += p * v.y;
        ref.z += p * v.z;
      }
      per_channel.push_back(divergences(t, ref));
      per_channel_refined.push_back(refined_divergences(t, ref));
    }
    if (per_channel.size() == 1) {
      bound_ = per_channel_refined.front();
    } else {
      // Each branch's own optimal reference is not the best choice for the
      // min, so try both references and keep the tighter combination.
      auto a = combined(per_channel);
      auto b = combined(per_channel_refined);
      bound_ = a.second <= b.second ? std::move(a.first) : std::move(b.first);
    }
    suffix_max_.assign(n_ + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t i = n_; i-- > 0;) suffix_max_[i] = std::max(suffix_max_[i + 1], bound_[i]);
  }

  // t d1 + (1-t) d2 with t minimizing the max entry, a convex function of t.
  std::pair<std::vector<double>, double> combined(
      const std::vector<std::vector<double>>& d) const {
    auto worst = [&](double w) {
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n_; ++i) m = std::max(m, w * d[0][i] + (1.0 - w) * d[1][i]);
      return m;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (worst(m1) <= worst(m2)) hi = m2; else lo = m1;
    }
    const double w = 0.5 * (lo + hi);
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = w * d[0][i] + (1.0 - w) * d[1][i];
    return {std::move(out), worst(w)};
  }

  // Depth-first search over first indices first_index, first_index + stride, ...
  Candidate run(std::size_t first_index, std::size_t stride, double threshold) {
    Candidate best;
    threshold_ = threshold;
    best_ = &best;
    int idx[kMaxEnsembleStates];
    int q[kMaxEnsembleStates];
    for (std::size_t i = first_index; i < n_; i += stride) {
      descend_at(idx, q, 0, i, 0, 0.0);
    }
    best_ = nullptr;
    return best;
  }

  // Best ensemble over the `keep` states with the largest bound. Any value it
  // returns is attained on the full grid, so it is a valid threshold.
  Candidate restricted_incumbent(std::size_t keep, double threshold) {
    if (keep >= n_) return {};
    std::vector<std::size_t> order(n_);
    for (std::size_t i = 0; i < n_; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return bound_[x] > bound_[y]; });
    order.resize(keep);
    std::sort(order.begin(), order.end());
    std::vector<ChannelTable> sub;
    for (const auto& t : tables_) {
      ChannelTable r;
      for (auto i : order) {
        r.out.push_back(t.out[i]);
        r.entropy.push_back(t.entropy[i]);
      }
      sub.push_back(std::move(r));
    }
    GridSearch inner(std::move(sub), config_);
    inner.shared_ = shared_;
    inner.evaluations_ = evaluations_;
    inner.bound_.clear();
    for (auto i : order) inner.bound_.push_back(bound_[i]);
    inner.suffix_max_.assign(keep + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t i = keep; i-- > 0;) {
      inner.suffix_max_[i] = std::max(inner.suffix_max_[i + 1], inner.bound_[i]);
    }
    Candidate c = inner.run(0, 1, threshold);
    evaluations_ = inner.evaluations_;
    for (int j = 0; j < c.length; ++j) c.key[2 * j] = static_cast<int>(order[c.key[2 * j]]);
    return c;
  }

  std::uint64_t evaluations() const { return evaluations_; }
  void set_counter(std::atomic<std::uint64_t>* shared) { shared_ = shared; }

 private:
  static constexpr double kSlack = 1e-10;

  void consider(Candidate& best, const int* idx, const int* q, int len) {
    count();
    Candidate c;
    c.value = evaluate(idx, q, len);
    c.length = len;
    for (int j = 0; j < len; ++j) {
      c.key[2 * j] = idx[j];
      c.key[2 * j + 1] = q[j];
    }
    if (c.better_than(best)) best = c;
  }

  void count() {
    ++evaluations_;
    if (shared_ != nullptr) {
      if (shared_->fetch_add(1, std::memory_order_relaxed) + 1 > config_.budget) {
        throw BudgetExceeded("oracle: evaluation budget of " + std::to_string(config_.budget) +
                             " exceeded");
      }
    } else if (evaluations_ > config_.budget) {
      throw BudgetExceeded("oracle: evaluation budget of " + std::to_string(config_.budget) +
                           " exceeded");
    }
  }

  bool pruned(double bound_sum) const {
    if (config_.exhaustive) return false;
    const double limit = std::max(threshold_, best_->value);
    return bound_sum / config_.prob_grid < limit - kSlack;
  }

  // Places state `i` at position `depth` with every admissible quanta count.
  void descend_at(int* idx, int* q, int depth, std::size_t i, int used, double bound_sum) {
    const int g = config_.prob_grid;
    const int remaining = g - used;
    const bool last = depth + 1 == config_.n_states;
    idx[depth] = static_cast<int>(i);
    for (int k = last ? remaining : 1; k <= remaining; ++k) {
      q[depth] = k;
      const double partial = bound_sum + k * (config_.exhaustive ? 0.0 : bound_[i]);
      const int left = remaining - k;
      if (left == 0) {
        if (pruned(partial)) continue;
        consider(*best_, idx, q, depth + 1);
        continue;
      }
      if (i + 1 >= n_) continue;
      if (pruned(partial + left * (config_.exhaustive ? 0.0 : suffix_max_[i + 1]))) continue;
      for (std::size_t j = i + 1; j < n_; ++j) {
        descend_at(idx, q, depth + 1, j, used + k, partial);
      }
    }
  }

  std::vector<ChannelTable> tables_;
  OracleConfig config_;
  std::size_t n_;
  std::vector<double> bound_;
  std::vector<double> suffix_max_;
  double threshold_ = -std::numeric_limits<double>::infinity();
  Candidate* best_ = nullptr;
  std::uint64_t evaluations_ = 0;
  std::atomic<std::uint64_t>* shared_ = nullptr;
};

inline OracleResult run_grid_search(const std::vector<Channel>& channels,
                                    const OracleConfig& config) {
  validate_oracle_config(config);
  const auto grid = oracle_state_grid(config);
  std::vector<ChannelTable> tables;
  for (const auto& ch : channels) tables.push_back(tabulate(ch, grid));

  OracleResult result;
  result.search_size = oracle_search_size(grid.size(), config);
  if (config.exhaustive && result.search_size > static_cast<double>(config.budget)) {
    throw BudgetExceeded("oracle: search size " + std::to_string(result.search_size) +
                         " exceeds budget " + std::to_string(config.budget));
  }

  std::atomic<std::uint64_t> counter{0};
  GridSearch prototype(tables, config);
  prototype.set_counter(&counter);
  double threshold = -std::numeric_limits<double>::infinity();
  if (!config.exhaustive) {
    const Candidate seed = prototype.seed();
    threshold = seed.value;
    prototype.set_bound(seed);
    const Candidate warm = prototype.restricted_incumbent(24, threshold);
    if (warm.valid()) threshold = std::max(threshold, warm.value);
  }

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(config.threads, grid.size()));
  std::vector<Candidate> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      GridSearch local = prototype;
      partial[w] = local.run(w, workers, threshold);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Candidate best;
  for (const auto& c : partial) {
    if (c.better_than(best)) best = c;
  }
  std::vector<EnsembleEntry> entries;
  for (int j = 0; j < best.length; ++j) {
    entries.push_back({static_cast<double>(best.key[2 * j + 1]) / config.prob_grid,
                       grid[best.key[2 * j]]});
  }
  result.value = best.value;
  result.ensemble = Ensemble(std::move(entries));
  result.evaluations = counter.load();
  return result;
}

}  // namespace detail

// Maximal Holevo quantity over the ensemble grid, with its argmax.
inline OracleResult oracle_capacity(const Channel& channel, const OracleConfig& config) {
  validate_channel(channel);
  return detail::run_grid_search({channel}, config);
}

// Maximal min(chi_1, chi_2) over the ensemble grid. A zero-weight branch is
// dropped, matching minimax_capacity.
inline OracleResult oracle_minimax(const MixedChannelPair& pair, const OracleConfig& config) {
  validate_pair(pair);
  if (pair.weight_first == 1.0) return detail::run_grid_search({pair.first}, config);
  if (pair.weight_first == 0.0) return detail::run_grid_search({pair.second}, config);
  return detail::run_grid_search({pair.first, pair.second}, config);
}

//=========================================================================
// Certification
//=========================================================================

inline constexpr double kDefaultCertifyBound = 2e-4;
inline constexpr double kOracleExcessTol = 1e-9;

struct Certification {
  double solver_value = 0.0;
  double oracle_value = 0.0;
  double bound = kDefaultCertifyBound;
  OracleResult oracle;

  double difference() const { return solver_value - oracle_value; }

  // The oracle searches a subset of ensembles, so it may trail the solver by
  // at most the grid-resolution bound and may never exceed it.
  bool passed() const {
    return oracle_value <= solver_value + kOracleExcessTol && difference() <= bound;
  }
};

inline Certification certify_capacity(const Channel& channel, const OracleConfig& config,
                                      double bound = kDefaultCertifyBound,
                                      double tol = kDefaultCapacityTol) {
  Certification c;
  c.solver_value = capacity(channel, tol).capacity_bits;
  c.oracle = oracle_capacity(channel, config);
  c.oracle_value = c.oracle.value;
  c.bound = bound;
  return c;
}

// Runs oracle_minimax against an existing minimax result and records the
// outcome in result.certified_by_oracle.
inline Certification certify_minimax(MinimaxResult& result, const MixedChannelPair& pair,
                                     const OracleConfig& config,
                                     double bound = kDefaultCertifyBound) {
  Certification c;
  c.solver_value = result.capacity_bits;
  c.oracle = oracle_minimax(pair, config);
  c.oracle_value = c.oracle.value;
  c.bound = bound;
  result.certified_by_oracle = c.passed();
  return c;
}

}  // namespace qchan

#endif  // QCHAN_ORACLE_HPP
