// Copyright 2026 The qmac Authors
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

#include <gtest/gtest.h>

#include "qmac/channels.hpp"
#include "qmac/checks.hpp"
#include "qmac/info.hpp"
#include "qmac/random.hpp"
#include "qmac/seqdecode.hpp"

namespace qmac {
namespace {

Matrix proj(const Vector& v) { return v * v.adjoint(); }

Matrix basis_proj(std::size_t d, std::size_t i) {
  return proj(Vector::Unit(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i)));
}

Matrix random_projector(std::size_t d, std::size_t rank, Rng& rng) {
  Matrix u = random_unitary(d, rng);
  Matrix c = u.leftCols(static_cast<Eigen::Index>(rank));
  return c * c.adjoint();
}

FactorSpace space(std::size_t d) { return FactorSpace({"B"}, {d}); }

double min_eig(const Matrix& m) { return eig_hermitian(m).values.minCoeff(); }

// Lambda_m built by explicit products, independent of the library.
std::vector<Matrix> hand_sequential(const Matrix& pi, const std::vector<Matrix>& ps) {
  const Eigen::Index d = pi.rows();
  std::vector<Matrix> out;
  Matrix prefix = Matrix::Identity(d, d);
  for (const auto& p : ps) {
    Matrix mid = pi * p * pi;
    out.push_back(prefix.adjoint() * mid * prefix);
    prefix = pi * (Matrix::Identity(d, d) - p) * pi * prefix;
  }
  return out;
}

TEST(SequentialPovm, SingleMessage) {
  Rng rng = make_rng(501);
  Matrix pi = random_projector(4, 3, rng);
  Matrix p = random_projector(4, 2, rng);
  PovmSet povm = sequential_povm(space(4), pi, {p});
  EXPECT_LT(max_abs(povm.elements()[0] - pi * p * pi), 1e-12);
}

TEST(SequentialPovm, OrthogonalCodewordsDecodePerfectly) {
  Matrix p0 = basis_proj(3, 0);
  Matrix p1 = basis_proj(3, 1);
  PovmSet povm = sequential_povm(space(3), p0 + p1, {p0, p1});
  EXPECT_NEAR((povm.elements()[0] * p0).trace().real(), 1, 1e-12);
  EXPECT_NEAR((povm.elements()[1] * p1).trace().real(), 1, 1e-12);
  EXPECT_NEAR(exact_success_probability(povm, {p0, p1}), 1, 1e-12);
}

TEST(SequentialPovm, MatchesHandProductsAndIsSubnormalized) {
  Rng rng = make_rng(502);
  for (int t = 0; t < 30; ++t) {
    Matrix pi = random_projector(4, 3, rng);
    std::vector<Matrix> ps = {random_projector(4, 1, rng), random_projector(4, 2, rng), random_projector(4, 1, rng)};
    PovmSet povm = sequential_povm(space(4), pi, ps);
    auto hand = hand_sequential(pi, ps);
    Matrix sum = Matrix::Zero(4, 4);
    for (std::size_t m = 0; m < 3; ++m) {
      EXPECT_LT(max_abs(povm.elements()[m] - hand[m]), 1e-12);
      EXPECT_GE(min_eig(povm.elements()[m]), -1e-12);
      sum += povm.elements()[m];
    }
    EXPECT_LE(eig_hermitian(sum).values.maxCoeff(), 1 + 1e-9);
  }
}

TEST(SequentialPovm, NonProjectorRejected) {
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  EXPECT_THROW(sequential_povm(space(2), Matrix::Identity(2, 2), {half}), ValidationError);
}

TEST(ExactSuccess, UniformGuessing) {
  for (std::size_t m = 1; m <= 4; ++m) {
    std::vector<Matrix> els(m, Matrix::Identity(2, 2) / static_cast<double>(m));
    std::vector<Matrix> states(m, basis_proj(2, 0));
    EXPECT_NEAR(exact_success_probability(PovmSet(space(2), els), states), 1.0 / static_cast<double>(m), 1e-14);
  }
}

TEST(ExactSuccess, IdenticalCodewordsTwoMessages) {
  Rng rng = make_rng(503);
  for (int t = 0; t < 10; ++t) {
    Matrix pi = random_projector(2, 1 + t % 2, rng);
    Matrix p = random_projector(2, 1, rng);
    Matrix rho = random_density_matrix(2, rng);
    PovmSet povm = sequential_povm(space(2), pi, {p, p});
    // (1/2)(Tr{Pi P Pi rho} + Tr{Pi Q Pi P Pi Q Pi rho}), Q = I - P.
    Matrix q = Matrix::Identity(2, 2) - p;
    double hand = 0.5 * ((pi * p * pi * rho).trace().real() + (pi * q * pi * p * pi * q * pi * rho).trace().real());
    EXPECT_NEAR(exact_success_probability(povm, {rho, rho}), hand, 1e-12);
  }
}

TEST(ExactSuccess, IndexMismatch) {
  PovmSet povm(space(2), {basis_proj(2, 0)});
  EXPECT_THROW(exact_success_probability(povm, {basis_proj(2, 0), basis_proj(2, 1)}), ValidationError);
}

LetterEnsemble random_letters(std::size_t d, std::size_t k, Rng& rng) {
  LetterEnsemble e;
  double total = 0;
  for (std::size_t x = 0; x < k; ++x) {
    Vector v = random_unit_vector(d, rng);
    e.states.push_back(0.9 * proj(v) + 0.1 * Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) / static_cast<double>(d));
    e.projectors.push_back(proj(v));
    e.probs.push_back(1.0 + static_cast<double>(x));
    total += e.probs.back();
  }
  for (auto& p : e.probs) p /= total;
  return e;
}

TEST(ExpectedSuccess, SingleMessageFormula) {
  Rng rng = make_rng(504);
  LetterEnsemble e = random_letters(3, 3, rng);
  Matrix pi = random_projector(3, 2, rng);
  double hand = 0;
  for (std::size_t x = 0; x < 3; ++x) hand += e.probs[x] * (e.projectors[x] * pi * e.states[x] * pi).trace().real();
  EXPECT_NEAR(expected_success_exhaustive(e, pi, 1), hand, 1e-12);
}

TEST(ExpectedSuccess, ExhaustiveAgreesWithMonteCarlo) {
  Rng rng = make_rng(505);
  LetterEnsemble e = random_letters(2, 2, rng);
  Matrix pi = Matrix::Identity(2, 2);
  double exact = expected_success_exhaustive(e, pi, 2);
  MonteCarloEstimate mc = expected_success_monte_carlo(e, pi, 2, 100000, 506);
  EXPECT_EQ(mc.samples, 100000u);
  EXPECT_LE(std::abs(mc.mean - exact), 3 * mc.stderr_ + 1e-12);
}

TEST(ExpectedSuccess, DeterministicAlphabet) {
  Rng rng = make_rng(507);
  LetterEnsemble e = random_letters(3, 1, rng);
  Matrix pi = random_projector(3, 2, rng);
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<Matrix> ps(m, e.projectors[0]);
    std::vector<Matrix> states(m, e.states[0]);
    double direct = exact_success_probability(sequential_povm(space(3), pi, ps), states);
    EXPECT_NEAR(expected_success_exhaustive(e, pi, m), direct, 1e-12);
  }
}

TEST(ExpectedSuccess, EnumerationCap) {
  Rng rng = make_rng(508);
  LetterEnsemble e = random_letters(2, 2, rng);
  EXPECT_THROW(expected_success_exhaustive(e, Matrix::Identity(2, 2), 20), DimensionCapError);
}

TEST(PackingBound, Limits) {
  EXPECT_NEAR(packing_lower_bound(1e-12, 1, 1e12, 1).value, 1, 1e-9);
  PackingBound half = packing_lower_bound(0.5, 1, 100, 2);
  EXPECT_TRUE(half.valid());
  EXPECT_EQ(half.value, 0);
}

TEST(PackingBound, FrozenValue) {
  // |0.98 (2 - e^{2^-5})|^2 at 50 digits.
  PackingBound b = packing_lower_bound(0.01, 1, 1024, 32);
  EXPECT_NEAR(b.value, 0.9003950040961594, 1e-14);
  EXPECT_TRUE(b.positive);
}

TEST(PackingBound, FlagsWhenHypothesesFail) {
  PackingBound grow = packing_lower_bound(0.1, 1, 1, 4);
  EXPECT_FALSE(grow.positive);
  EXPECT_EQ(grow.value, 0);
  PackingBound eps = packing_lower_bound(0.7, 1, 100, 1);
  EXPECT_FALSE(eps.eps_ok);
  EXPECT_EQ(eps.value, 0);
}

TEST(PackingBound, HoldsOnRandomInstances) {
  auto inst = packing_instances(50, 509);
  ASSERT_GE(inst.size(), 50u);
  for (const auto& x : inst) {
    ASSERT_TRUE(x.bound.valid());
    EXPECT_GE(expected_success_exhaustive(x.ensemble, x.code_projector, x.message_count), x.bound.value - 1e-12);
  }
}

TEST(Diagnostics, ZeroProjectorAndDefinition) {
  Rng rng = make_rng(510);
  LetterEnsemble e = random_letters(3, 2, rng);
  for (double f : packing_diagnostics(e, Matrix::Zero(3, 3), 3)) EXPECT_EQ(f, 0);
  Matrix pi = random_projector(3, 2, rng);
  Matrix w1 = Matrix::Zero(3, 3);
  for (std::size_t x = 0; x < 2; ++x) w1 += e.probs[x] * e.projectors[x] * e.states[x] * e.projectors[x];
  EXPECT_NEAR(packing_diagnostics(e, pi, 0)[0], (w1 * pi).trace().real(), 1e-12);
}

TEST(Diagnostics, OrthogonalPureCodewords) {
  const std::size_t k = 3;
  LetterEnsemble e;
  Matrix pi = Matrix::Zero(4, 4);
  for (std::size_t x = 0; x < k; ++x) {
    e.probs.push_back(1.0 / k);
    e.states.push_back(basis_proj(4, x));
    e.projectors.push_back(basis_proj(4, x));
    pi += basis_proj(4, x);
  }
  // W1 = pi / k and Wb0 = pi / k, so f_z = Tr{pi} / k^{z+1} = k^{-z}.
  auto f = packing_diagnostics(e, pi, 4);
  for (std::size_t z = 0; z <= 4; ++z) EXPECT_NEAR(f[z], std::pow(1.0 / k, static_cast<double>(z)), 1e-12);
}

TEST(Diagnostics, ScaledChainOnRandomInstances) {
  for (const auto& x : packing_instances(50, 511)) {
    auto f = packing_diagnostics(x.ensemble, x.code_projector, 4);
    const double ratio = x.constants.inv_D / x.constants.inv_d;
    EXPECT_GE(f[0], 1 - 2 * x.constants.epsilon - 1e-12);
    for (std::size_t z = 1; z < f.size(); ++z) EXPECT_LE(f[z], ratio * f[z - 1] + 1e-12);
  }
}

// Sequential success for a code over explicit codeword vectors, by hand.
double hand_success(const std::vector<Vector>& words) {
  std::vector<Matrix> ps;
  for (const auto& w : words) ps.push_back(proj(w));
  auto lambdas = hand_sequential(Matrix::Identity(4, 4), ps);
  double s = 0;
  for (std::size_t m = 0; m < words.size(); ++m) s += (lambdas[m] * ps[m]).trace().real();
  return s / static_cast<double>(words.size());
}

TEST(Protocol, NoiselessSingleMessage) {
  SequentialReport r = ea_sequential_protocol(identity_channel(2), max_entangled("A", "A'", 2), 1, 1, 0.3, 1, 10);
  EXPECT_NEAR(r.success_mean, 1, 1e-9);
}

TEST(Protocol, NoiselessFourMessagesMatchesEnumeration) {
  // With a Bell state split into two singleton types, S holds the four sign patterns diag(+-1, +-1).
  std::vector<Vector> words;
  for (int b0 = 0; b0 < 2; ++b0) {
    for (int b1 = 0; b1 < 2; ++b1) {
      Vector v = Vector::Zero(4);
      v(0) = (b0 ? -1.0 : 1.0) / std::sqrt(2.0);
      v(3) = (b1 ? -1.0 : 1.0) / std::sqrt(2.0);
      words.push_back(v);
    }
  }
  double oracle = 0;
  for (int code = 0; code < 256; ++code) {
    std::vector<Vector> c;
    for (int m = 0; m < 4; ++m) c.push_back(words[static_cast<std::size_t>((code >> (2 * m)) & 3)]);
    oracle += hand_success(c) / 256;
  }
  SequentialReport r = ea_sequential_protocol(identity_channel(2), max_entangled("A", "A'", 2), 1, 4, 5.0, 3, 10);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_NEAR(r.success_mean, oracle, 1e-12);
}

TEST(Protocol, FullyDepolarizingIsGuessing) {
  for (std::size_t m = 2; m <= 4; ++m) {
    SequentialReport r =
        ea_sequential_protocol(depolarizing_channel(1.0), max_entangled("A", "A'", 2), 1, m, 0.3, 4, 1000);
    EXPECT_NEAR(r.success_mean, 1.0 / static_cast<double>(m), 1e-12);
  }
}

TEST(Protocol, MonteCarloPathIsReproducible) {
  PureState phi = schmidt_state("A", "A'", {0.7, 0.3});
  SequentialReport a = ea_sequential_protocol(amplitude_damping_channel(0.2), phi, 2, 5, 0.4, 9, 40);
  SequentialReport b = ea_sequential_protocol(amplitude_damping_channel(0.2), phi, 2, 5, 0.4, 9, 40);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.trials, 40u);
  EXPECT_EQ(a.success_mean, b.success_mean);
  EXPECT_GE(a.success_mean, 0);
  EXPECT_LE(a.success_mean, 1);
}

TEST(SuccessiveBound, Limits) {
  SuccessiveConstants c;
  c.d2 = 1;
  c.d1_plus = 1e12;
  c.M = 1;
  EXPECT_NEAR(successive_bound(c).clamped, 1, 1e-9);
  c.epsilon = 0.1;
  c.eps_prime = 0.1;
  SuccessiveBound b = successive_bound(c);
  EXPECT_NEAR(b.gentle_term, 1.2649110640673518, 1e-14);
  EXPECT_LT(b.raw, 0);
  EXPECT_EQ(b.clamped, 0);
}

TEST(SuccessiveBound, ConsistentEpsPrime) {
  const double e = consistent_eps_prime(1, 3, 10);
  EXPECT_NEAR(2 - std::exp(0.3), 1 - e, 1e-14);
}

TEST(SuccessivePovm, OrthogonalSinglePair) {
  Matrix p = basis_proj(2, 0);
  PovmSet povm = successive_povm(space(2), Matrix::Identity(2, 2), {p}, {{p}});
  EXPECT_NEAR(exact_success_probability(povm, {p}), 1, 1e-12);
  SuccessiveConstants c = measure_successive_constants({1.0}, {1.0}, {{p}}, Matrix::Identity(2, 2), {p}, {{p}}, 1, 1);
  EXPECT_GE(1.0, successive_bound(c).clamped);
}

TEST(SuccessivePovm, SubnormalizedOnRandomFamilies) {
  Rng rng = make_rng(512);
  for (int t = 0; t < 30; ++t) {
    const std::size_t L = 1 + t % 3;
    const std::size_t M = 1 + (t / 3) % 3;
    Matrix pi = random_projector(6, 5, rng);
    std::vector<Matrix> first;
    std::vector<std::vector<Matrix>> pairs(L);
    for (std::size_t l = 0; l < L; ++l) {
      first.push_back(random_projector(6, 3, rng));
      for (std::size_t m = 0; m < M; ++m) pairs[l].push_back(random_projector(6, 1, rng));
    }
    PovmSet povm = successive_povm(space(6), pi, first, pairs);
    EXPECT_EQ(povm.size(), L * M);
    EXPECT_LE(povm.sum_max_eigenvalue(), 1 + 1e-9);
  }
}

TEST(Exponents, UnassistedRatio) {
  const double hb = 0.9, hbx = 0.4, hbxy = 0.1, delta = 0.05;
  const std::size_t n = 7;
  SuccessiveExponents e = unassisted_exponents(hb, hbx, hbxy, n, delta);
  EXPECT_NEAR(e.log_D1 - e.log_d1_minus, static_cast<double>(n) * ((hb - hbx) - 2 * delta), 1e-12);
  EXPECT_NEAR(e.log_d1_plus - e.log_d2, static_cast<double>(n) * ((hbx - hbxy) - 2 * delta), 1e-12);
}

TEST(Exponents, AssistedRatio) {
  const double ha = 1, hb = 0.8, hc = 1.2, hac = 1.5, habc = 1.1, delta = 0.02;
  const std::size_t n = 5;
  SuccessiveExponents e = assisted_exponents(ha, hb, hc, hac, habc, n, delta);
  // D1 / d1- = 2^{n [I(A;C) - 2 delta]}.
  EXPECT_NEAR(e.log_D1 - e.log_d1_minus, static_cast<double>(n) * (ha + hc - hac - 2 * delta), 1e-12);
}

}  // namespace
}  // namespace qmac
