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

#include "qchan/linalg2.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "support/reference.hpp"

namespace qchan {
namespace {

using reference::Sampler;

TEST(Eigenvalues, MaximallyMixed) {
  const auto e = eigenvalues_herm2({0.5, 0.5, {0.0, 0.0}});
  EXPECT_EQ(e.upper, 0.5);
  EXPECT_EQ(e.lower, 0.5);
}

TEST(Eigenvalues, Diagonal) {
  const auto e = eigenvalues_herm2({1.0, 0.0, {0.0, 0.0}});
  EXPECT_EQ(e.upper, 1.0);
  EXPECT_EQ(e.lower, 0.0);
}

TEST(Eigenvalues, PlusState) {
  const auto e = eigenvalues_herm2({0.5, 0.5, {0.5, 0.0}});
  EXPECT_DOUBLE_EQ(e.upper, 1.0);
  EXPECT_NEAR(e.lower, 0.0, 1e-16);
}

TEST(Eigenvalues, RandomDensityMatricesAgreeWithCharacteristicPolynomial) {
  Sampler rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Herm2 m = rng.mixed_state().matrix();
    const auto e = eigenvalues_herm2(m);
    const auto ref = reference::eigen_charpoly(m);
    EXPECT_GE(e.upper, e.lower);
    EXPECT_NEAR(e.upper + e.lower, 1.0, 1e-12);
    EXPECT_NEAR(e.lower, static_cast<double>(ref.second), 1e-7);  // charpoly loses half the digits
    const double s = von_neumann_entropy(m);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(BinaryEntropy, Examples) {
  EXPECT_EQ(binary_entropy(0.5), 1.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.25), reference::kH025, 1e-15);
  EXPECT_NEAR(binary_entropy(0.25), static_cast<double>(reference::binary_entropy_ld(0.25L)),
              1e-15);
}

TEST(BinaryEntropy, ClampsWithinToleranceAndRejectsBeyond) {
  EXPECT_EQ(binary_entropy(-1e-12), 0.0);
  EXPECT_EQ(binary_entropy(1.0 + 1e-12), 0.0);
  EXPECT_THROW(binary_entropy(-1e-3), DomainError);
  EXPECT_THROW(binary_entropy(1.5), DomainError);
  EXPECT_THROW(binary_entropy(std::nan("")), DomainError);
}

TEST(BinaryEntropy, SymmetricOnDenseGrid) {
  for (int i = 0; i <= 10000; ++i) {
    const double p = i / 10000.0;
    ASSERT_LT(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)), 1e-14) << "p=" << p;
  }
}

TEST(BinaryEntropy, MatchesLongDoubleReference) {
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    EXPECT_NEAR(binary_entropy(p), static_cast<double>(reference::binary_entropy_ld(p)), 4e-16);
  }
}

TEST(VonNeumannEntropy, Examples) {
  EXPECT_EQ(von_neumann_entropy(Herm2{0.5, 0.5, {0.0, 0.0}}), 1.0);
  EXPECT_NEAR(von_neumann_entropy(Herm2{0.25, 0.75, {0.0, 0.0}}), reference::kH025, 1e-15);
}

TEST(VonNeumannEntropy, PureStatesHaveZeroEntropy) {
  Sampler rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto s = rng.pure_state();
    ASSERT_TRUE(s.is_pure());
    EXPECT_LT(von_neumann_entropy(s), 1e-10) << "a=" << s.a;
  }
}

TEST(VonNeumannEntropy, RejectsNonStates) {
  EXPECT_THROW(von_neumann_entropy(Herm2{0.5, 0.6, {0.0, 0.0}}), DomainError);
  EXPECT_THROW(von_neumann_entropy(Herm2{0.5, 0.5, {0.8, 0.0}}), DomainError);
}

TEST(QubitStateTest, PoincareBall) {
  EXPECT_TRUE(QubitState::pure(0.3).is_valid());
  EXPECT_TRUE(QubitState::pure(0.3).is_pure());
  EXPECT_TRUE((QubitState{0.5, {0.0, 0.0}}).is_valid());
  EXPECT_FALSE((QubitState{0.5, {0.0, 0.0}}).is_pure());
  EXPECT_FALSE((QubitState{0.5, {0.6, 0.0}}).is_valid());
  EXPECT_FALSE((QubitState{1.2, {0.0, 0.0}}).is_valid());
  const auto h = QubitState::pure(0.7).matrix();
  EXPECT_DOUBLE_EQ(h.trace(), 1.0);
}

TEST(EnsembleTest, Validation) {
  const auto s = QubitState::pure(0.5);
  EXPECT_THROW(Ensemble({}), DomainError);
  EXPECT_THROW(Ensemble({{0.5, s}, {0.4, s}}), DomainError);
  EXPECT_THROW(Ensemble({{1.5, s}, {-0.5, s}}), DomainError);
  EXPECT_THROW(Ensemble({{0.2, s}, {0.2, s}, {0.2, s}, {0.2, s}, {0.2, s}}), DomainError);
  EXPECT_THROW(Ensemble({{1.0, QubitState{0.5, {0.7, 0.0}}}}), DomainError);
  EXPECT_NO_THROW(Ensemble({{0.25, s}, {0.25, s}, {0.25, s}, {0.25, s}}));
}

TEST(Mix, SingleState) {
  const auto s = QubitState::pure(0.3, -1.0);
  EXPECT_EQ(mix(Ensemble{{1.0, s}}), s);
}

TEST(Mix, MirrorPairCancelsCoherence) {
  const auto s = QubitState::pure(0.3);
  const auto m = mix(Ensemble{{0.5, s}, {0.5, s.mirrored()}});
  EXPECT_EQ(m.a, 0.3);
  EXPECT_EQ(m.b, Complex(0.0, 0.0));
}

TEST(Mix, Poles) {
  const auto m = mix(Ensemble{{0.5, QubitState{0.0, {0, 0}}}, {0.5, QubitState{1.0, {0, 0}}}});
  EXPECT_EQ(m.a, 0.5);
  EXPECT_EQ(m.b, Complex(0.0, 0.0));
}

TEST(Mix, AffineUnderRefinement) {
  Sampler rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Ensemble coarse = rng.ensemble();
    std::vector<EnsembleEntry> fine;
    for (const auto& e : coarse) {
      const double split = rng.uniform();
      fine.push_back({e.p * split, e.state});
      fine.push_back({e.p * (1.0 - split), e.state});
    }
    const auto a = mix(coarse);
    const auto b = mix(Ensemble(fine, 2 * kMaxEnsembleStates));
    EXPECT_NEAR(a.a, b.a, 1e-14);
    EXPECT_NEAR(std::abs(a.b - b.b), 0.0, 1e-14);
  }
}

}  // namespace
}  // namespace qchan
