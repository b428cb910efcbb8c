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

#include "qchan/mixtures.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "qchan/oracle.hpp"
#include "support/reference.hpp"

namespace qchan {
namespace {

using reference::Sampler;

struct SeparationPair {
  double gamma;
  double lambda;
};

// Reads {"gamma": G, "lambda": L} from the shipped fixture.
SeparationPair load_separation_pair() {
  std::ifstream in(std::string(QCHAN_FIXTURE_DIR) + "/separation_pair.json");
  const auto j = nlohmann::json::parse(in);
  return {j.at("gamma").get<double>(), j.at("lambda").get<double>()};
}

double dense_min_chi(const Channel& c1, const Channel& c2, double step) {
  return reference::grid_max(
             [&](double a) { return std::min(mirror_pair_chi(c1, a), mirror_pair_chi(c2, a)); },
             0.0, 1.0, step)
      .value;
}

TEST(Minimax, IdenticalChannelsGiveSingleCapacity) {
  for (double g : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const auto r = minimax_capacity({AmplitudeDamping{g}, AmplitudeDamping{g}});
    EXPECT_NEAR(r.capacity_bits, capacity_amplitude_damping(g).capacity_bits, 1e-9) << g;
    EXPECT_NEAR(r.separation_gap(), 0.0, 1e-9);
  }
  for (double l : {0.0, 0.3, 1.0}) {
    const auto r = minimax_capacity({Depolarizing{l}, Depolarizing{l}});
    EXPECT_NEAR(r.capacity_bits, capacity_depolarizing(l).capacity_bits, 1e-12);
  }
}

TEST(Minimax, TwoDepolarizingClosedForm) {
  Sampler rng(71);
  for (int i = 0; i < 50; ++i) {
    const double l1 = rng.uniform(), l2 = rng.uniform();
    const auto r = minimax_capacity({Depolarizing{l1}, Depolarizing{l2}});
    const double expect = 1.0 - static_cast<double>(
                                    reference::binary_entropy_ld(std::max(l1, l2) / 2.0));
    EXPECT_NEAR(r.capacity_bits, expect, 1e-8) << l1 << " " << l2;
    EXPECT_NEAR(r.capacity_bits, capacity_two_depolarizing(l1, l2).capacity_bits, 1e-8);
  }
}

TEST(Minimax, TwoAmplitudeDampingIsWorseBranch) {
  Sampler rng(72);
  for (int i = 0; i < 30; ++i) {
    const double g1 = rng.uniform(), g2 = rng.uniform();
    const auto r = minimax_capacity({AmplitudeDamping{g1}, AmplitudeDamping{g2}});
    EXPECT_NEAR(r.capacity_bits, capacity_two_amplitude_damping(g1, g2).capacity_bits, 1e-6);
  }
}

TEST(Minimax, UpperBoundLaw) {
  Sampler rng(73);
  for (int i = 0; i < 100; ++i) {
    const MixedChannelPair pair{rng.channel(), rng.channel(), rng.uniform(0.05, 0.95)};
    const auto r = minimax_capacity(pair);
    const double c1 = capacity(pair.first).capacity_bits;
    const double c2 = capacity(pair.second).capacity_bits;
    EXPECT_LE(r.capacity_bits, std::min(c1, c2) + 1e-9);
    EXPECT_GE(r.capacity_bits, 0.0);
  }
}

TEST(Minimax, MatchesDenseGridOnRandomMixedPairs) {
  Sampler rng(74);
  for (int i = 0; i < 20; ++i) {
    const Channel c1 = AmplitudeDamping{rng.uniform()};
    const Channel c2 = Depolarizing{rng.uniform()};
    const auto r = minimax_capacity({c1, c2});
    const double grid = dense_min_chi(c1, c2, 1e-4);
    EXPECT_GE(r.capacity_bits, grid - 1e-9);
    EXPECT_LE(r.capacity_bits, grid + 1e-6);
  }
}

TEST(Minimax, WeightZeroOrOneUsesSingleBranch) {
  const Channel ad = AmplitudeDamping{0.5};
  const Channel dep = Depolarizing{0.1};
  const auto first = minimax_capacity({ad, dep, 1.0});
  EXPECT_NEAR(first.capacity_bits, capacity_amplitude_damping(0.5).capacity_bits, 1e-9);
  EXPECT_EQ(first.min_branch, MinBranch::first);
  const auto second = minimax_capacity({ad, dep, 0.0});
  EXPECT_NEAR(second.capacity_bits, capacity_depolarizing(0.1).capacity_bits, 1e-12);
  EXPECT_EQ(second.min_branch, MinBranch::second);
}

TEST(Minimax, RejectsUnsupportedVariant) {
  const Channel general = GeneralKraus{kraus_amplitude_damping(0.3)};
  EXPECT_THROW(minimax_capacity({general, Depolarizing{0.2}}), DomainError);
  EXPECT_THROW(minimax_capacity({Depolarizing{0.2}, Depolarizing{0.2}}, 0.0), DomainError);
}

TEST(Minimax, BranchNames) {
  EXPECT_EQ(to_string(MinBranch::first), "channel1");
  EXPECT_EQ(to_string(MinBranch::second), "channel2");
  EXPECT_EQ(to_string(MinBranch::tie), "tie");
}

//-------------------------------------------------------------------------
// Separation fixture
//-------------------------------------------------------------------------

TEST(Separation, FixtureStrictlyBelowBranchMinimum) {
  const auto [g, l] = load_separation_pair();
  const auto r = minimax_capacity({AmplitudeDamping{g}, Depolarizing{l}});
  EXPECT_LT(r.capacity_bits, r.branch_min() - 1e-3);
  ASSERT_TRUE(r.a_cross.has_value());
  EXPECT_GT(*r.a_cross, 0.5);
  EXPECT_LT(*r.a_cross, capacity_amplitude_damping(g).a_max);
  EXPECT_EQ(r.min_branch, MinBranch::tie);
}

TEST(Separation, FixtureAgreesWithDenseGrid) {
  const auto [g, l] = load_separation_pair();
  const Channel c1 = AmplitudeDamping{g};
  const Channel c2 = Depolarizing{l};
  const auto r = minimax_capacity({c1, c2});
  const double grid = dense_min_chi(c1, c2, 1e-6);
  EXPECT_GE(r.capacity_bits, grid - 1e-10);
  EXPECT_LE(r.capacity_bits, grid + 1e-6);  // the kink at the crossing falls between grid points
  // Branch capacities from the single-channel solvers.
  EXPECT_NEAR(r.capacity_first, capacity_amplitude_damping(g).capacity_bits, 1e-9);
  EXPECT_NEAR(r.capacity_second, capacity_depolarizing(l).capacity_bits, 1e-12);
}

//-------------------------------------------------------------------------
// Homogeneous closed forms
//-------------------------------------------------------------------------

TEST(TwoAmplitudeDamping, Examples) {
  EXPECT_EQ(capacity_two_amplitude_damping(0.4, 0.4).capacity_bits,
            capacity_amplitude_damping(0.4).capacity_bits);
  EXPECT_EQ(capacity_two_amplitude_damping(0.0, 0.7).capacity_bits,
            capacity_amplitude_damping(0.7).capacity_bits);
  EXPECT_EQ(capacity_two_amplitude_damping(0.2, 0.6).capacity_bits,
            capacity_amplitude_damping(0.6).capacity_bits);
  EXPECT_THROW(capacity_two_amplitude_damping(-0.1, 0.5), DomainError);
}

TEST(TwoDepolarizing, Examples) {
  EXPECT_EQ(capacity_two_depolarizing(0.0, 0.0).capacity_bits, 1.0);
  EXPECT_NEAR(capacity_two_depolarizing(0.5, 0.5).capacity_bits, reference::kOneMinusH025,
              1e-15);
  EXPECT_NEAR(capacity_two_depolarizing(0.3, 0.7).capacity_bits, reference::kOneMinusH035,
              1e-15);
  EXPECT_THROW(capacity_two_depolarizing(0.5, 1.5), DomainError);
}

//-------------------------------------------------------------------------
// Monotonicity functions
//-------------------------------------------------------------------------

double chi_nats(double g, double a) { return std::numbers::ln2 * chi_ad_curve(g, a); }

TEST(DchiDgamma, NonPositiveOnGrid) {
  for (int i = 1; i <= 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double g = i / 101.0;
      const double a = j / 100.0;
      EXPECT_LE(dchi_dgamma(g, a), 1e-10) << g << " " << a;
    }
  }
}

TEST(DchiDgamma, VanishesAsAApproachesOne) {
  for (double g : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(dchi_dgamma(g, 1.0 - 1e-9), 0.0, 1e-6);
  }
}

TEST(DchiDgamma, MatchesFiniteDifference) {
  const double fd =
      reference::central_difference([](double g) { return chi_nats(g, 0.4); }, 0.3, 1e-6);
  EXPECT_NEAR(dchi_dgamma(0.3, 0.4), fd, 1e-5);
  Sampler rng(75);
  for (int i = 0; i < 1000; ++i) {
    const double g = rng.uniform(0.01, 0.99);
    const double a = rng.uniform(0.0, 0.98);
    const double d =
        reference::central_difference([&](double x) { return chi_nats(x, a); }, g, 1e-6);
    EXPECT_NEAR(dchi_dgamma(g, a), d, 1e-5) << g << " " << a;
  }
}

TEST(DchiDgamma, RejectsEndpoints) {
  EXPECT_THROW(dchi_dgamma(0.0, 0.5), DomainError);
  EXPECT_THROW(dchi_dgamma(1.0, 0.5), DomainError);
  EXPECT_THROW(dchi_dgamma(0.5, 1.0), DomainError);
}

TEST(ChiAdCurve, PointwiseDecreasingInGamma) {
  for (int i = 1; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double g1 = i / 101.0, g2 = (i + 1) / 101.0, a = j / 100.0;
      EXPECT_GE(chi_ad_curve(g1, a), chi_ad_curve(g2, a) - 1e-15) << g1 << " " << a;
    }
  }
}

TEST(MonotonicityF, Examples) {
  EXPECT_NEAR(monotonicity_f(0.75, 0.0), 0.0, 1e-15);
  EXPECT_GE(monotonicity_f(0.75, 0.5), 0.0);
  EXPECT_GT(monotonicity_df_da(0.6, 0.3), 0.0);
  const double fd = reference::central_difference(
      [](double a) { return monotonicity_f(0.6, a); }, 0.3, 1e-6);
  EXPECT_NEAR(monotonicity_df_da(0.6, 0.3), fd, 1e-5);
}

TEST(MonotonicityF, DchiIsMinusOneMinusATimesF) {
  Sampler rng(76);
  for (int i = 0; i < 200; ++i) {
    const double g = rng.uniform(0.01, 0.99), a = rng.uniform(0.0, 0.99);
    EXPECT_NEAR(dchi_dgamma(g, a), -(1.0 - a) * monotonicity_f(g, a), 1e-12);
  }
}

TEST(MonotonicityF, NonNegativeOnGrid) {
  for (int i = 1; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double g = 0.5 + i / 200.0;
      const double a = j / 100.0;
      EXPECT_GE(monotonicity_f(g, a), -1e-10) << g << " " << a;
      EXPECT_GT(monotonicity_df_da(g, a), 0.0) << g << " " << a;
    }
  }
}

TEST(MonotonicityF, DerivativeMatchesFiniteDifference) {
  Sampler rng(77);
  for (int i = 0; i < 1000; ++i) {
    const double g = rng.uniform(0.5, 0.99);
    const double a = rng.uniform(1e-3, 0.98);
    const double fd = reference::central_difference(
        [&](double x) { return monotonicity_f(g, x); }, a, 1e-6);
    EXPECT_NEAR(monotonicity_df_da(g, a), fd, 1e-5) << g << " " << a;
  }
}

}  // namespace
}  // namespace qchan
