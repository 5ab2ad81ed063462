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

#include <cstdlib>

#include <gtest/gtest.h>

#include "qmac/channels.hpp"
#include "qmac/info.hpp"
#include "qmac/qmat.hpp"
#include "qmac/random.hpp"

namespace qmac {
namespace {

FactorSpace q(const std::string& label, std::size_t d = 2) { return FactorSpace({label}, {d}); }

Matrix ket_bra(std::size_t d, std::size_t i) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1;
  return m;
}

TEST(Tensor, IdentityTimesIdentity) {
  Operator t = tensor(identity(q("A")), identity(q("B")));
  EXPECT_LT(max_abs(t.matrix() - Matrix::Identity(4, 4)), 1e-15);
  EXPECT_EQ(t.space().labels(), (std::vector<std::string>{"A", "B"}));
}

TEST(Tensor, BasisProjectors) {
  Operator t = tensor(Operator(q("A"), ket_bra(2, 0)), Operator(q("B"), ket_bra(2, 1)));
  EXPECT_LT(max_abs(t.matrix() - ket_bra(4, 1)), 1e-15);
}

TEST(Tensor, TraceIsMultiplicative) {
  Rng rng = make_rng(101);
  for (int i = 0; i < 10; ++i) {
    Matrix a = random_ginibre(3, 3, rng);
    Matrix b = random_ginibre(3, 3, rng);
    a = a * a.adjoint();
    b = b * b.adjoint();
    Operator t = tensor(Operator(q("A", 3), a), Operator(q("B", 3), b));
    EXPECT_NEAR(std::abs(t.matrix().trace() - a.trace() * b.trace()), 0.0, 1e-10);
  }
}

TEST(Tensor, RejectsDuplicateLabels) {
  EXPECT_THROW(tensor(identity(q("A")), identity(q("A"))), ValidationError);
}

TEST(Tensor, RespectsDimensionCap) {
  ::setenv("QMAC_DIM_CAP", "8", 1);
  EXPECT_THROW(tensor(identity(q("A", 4)), identity(q("B", 4))), DimensionCapError);
  try {
    check_dimension(16);
  } catch (const DimensionCapError& e) {
    EXPECT_EQ(e.required(), 16u);
    EXPECT_EQ(e.available(), 8u);
  }
  ::unsetenv("QMAC_DIM_CAP");
  EXPECT_EQ(dimension_cap(), 4096u);
}

TEST(PartialTrace, BellReducesToMaximallyMixed) {
  DensityOperator rho = max_entangled("A", "B", 2).density();
  DensityOperator a = partial_trace(rho, {"A"});
  EXPECT_LT(max_abs(a.matrix() - 0.5 * Matrix::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, ProductCase) {
  Rng rng = make_rng(102);
  Matrix ra = random_density_matrix(2, rng);
  Matrix rb = random_density_matrix(3, rng);
  DensityOperator rho(tensor(Operator(q("A"), ra), Operator(q("B", 3), rb)));
  EXPECT_LT(max_abs(partial_trace(rho, {"A"}).matrix() - ra), 1e-12);
  EXPECT_LT(max_abs(partial_trace(rho, {"B"}).matrix() - rb), 1e-12);
}

TEST(PartialTrace, MatchesIndexSumOracle) {
  Rng rng = make_rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_density_matrix(6, rng);
    DensityOperator rho(FactorSpace({"A", "B"}, {2, 3}), m);
    Matrix oa = Matrix::Zero(2, 2);
    Matrix ob = Matrix::Zero(3, 3);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 3; ++k) oa(i, j) += m(i * 3 + k, j * 3 + k);
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 2; ++k) ob(i, j) += m(k * 3 + i, k * 3 + j);
      }
    }
    EXPECT_LT(max_abs(partial_trace(rho, {"A"}).matrix() - oa), 1e-12);
    EXPECT_LT(max_abs(partial_trace(rho, {"B"}).matrix() - ob), 1e-12);
  }
}

TEST(PartialTrace, UnknownLabelThrows) {
  DensityOperator rho = max_entangled("A", "B", 2).density();
  EXPECT_THROW(partial_trace(rho, {"Z"}), ValidationError);
}

TEST(PartialTrace, OfTensorRecoversFactor) {
  Rng rng = make_rng(104);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix a = random_density_matrix(3, rng);
    Matrix b = random_density_matrix(2, rng);
    Operator t = tensor(Operator(q("A", 3), a), Operator(q("B"), b));
    EXPECT_LT(max_abs(partial_trace(t, {"A"}).matrix() - a), 1e-12);
  }
}

TEST(Eig, DiagonalSortedDescending) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 3;
  m(1, 1) = 1;
  m(2, 2) = 2;
  Eigensystem es = eig_hermitian(m);
  EXPECT_NEAR(es.values(0), 3, 1e-14);
  EXPECT_NEAR(es.values(1), 2, 1e-14);
  EXPECT_NEAR(es.values(2), 1, 1e-14);
  EXPECT_NEAR(std::abs(es.vectors(2, 1)), 1, 1e-14);
}

TEST(Eig, PauliX) {
  Matrix x = weyl_shift(2, 1);
  Eigensystem es = eig_hermitian(x);
  EXPECT_NEAR(es.values(0), 1, 1e-14);
  EXPECT_NEAR(es.values(1), -1, 1e-14);
  Vector plus(2), minus(2);
  plus << 1, 1;
  minus << 1, -1;
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  EXPECT_NEAR(std::abs(plus.dot(es.vectors.col(0))), 1, 1e-12);
  EXPECT_NEAR(std::abs(minus.dot(es.vectors.col(1))), 1, 1e-12);
}

TEST(Eig, DegenerateTieBreakIsBasisOrder) {
  Eigensystem es = eig_hermitian(Matrix::Identity(3, 3));
  EXPECT_LT(max_abs(es.vectors - Matrix::Identity(3, 3)), 1e-12);
}

TEST(Eig, RandomReconstructionAndOrthonormality) {
  Rng rng = make_rng(105);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix h = random_hermitian(6, rng);
    Eigensystem es = eig_hermitian(h);
    Matrix rec = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    EXPECT_LT(max_abs(rec - h), 1e-9);
    EXPECT_LT(max_abs(es.vectors.adjoint() * es.vectors - Matrix::Identity(6, 6)), 1e-9);
    for (int i = 0; i + 1 < 6; ++i) EXPECT_GE(es.values(i), es.values(i + 1));
  }
}

TEST(Eig, NonHermitianThrows) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  EXPECT_THROW(eig_hermitian(m), ValidationError);
}

TEST(OperatorPower, IdentityInverseRoot) {
  EXPECT_LT(max_abs(operator_power(Matrix::Identity(4, 4), -0.5) - Matrix::Identity(4, 4)), 1e-14);
}

TEST(OperatorPower, ScaledProjector) {
  Rng rng = make_rng(106);
  Matrix u = random_unitary(4, rng);
  Matrix p = u.leftCols(2) * u.leftCols(2).adjoint();
  EXPECT_LT(max_abs(operator_power(4.0 * p, -0.5) - 0.5 * p), 1e-12);
}

TEST(OperatorPower, SquareRootSquares) {
  Rng rng = make_rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix g = random_ginibre(5, 5, rng);
    Matrix m = g * g.adjoint();
    Matrix r = operator_power(m, 0.5);
    EXPECT_LT(max_abs(r * r - m), 1e-9);
  }
}

TEST(OperatorPower, NegativeEigenvalueThrows) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = -0.1;
  EXPECT_THROW(operator_power(m, 0.5), ValidationError);
}

TEST(ApplyChannel, IdentityLeavesInputUnchanged) {
  Rng rng = make_rng(108);
  DensityOperator rho(q("A'", 3), random_density_matrix(3, rng));
  DensityOperator out = apply_channel(identity_channel(3), rho, {"A'"});
  EXPECT_LT(max_abs(out.matrix() - rho.matrix()), 1e-14);
  EXPECT_EQ(out.space().labels(), (std::vector<std::string>{"B"}));
}

TEST(ApplyChannel, FullDepolarizingGivesMaximallyMixed) {
  Rng rng = make_rng(109);
  DensityOperator rho(q("A'"), random_density_matrix(2, rng));
  DensityOperator out = apply_channel(depolarizing_channel(1.0), rho, {"A'"});
  EXPECT_LT(max_abs(out.matrix() - 0.5 * Matrix::Identity(2, 2)), 1e-14);
}

TEST(ApplyChannel, AmplitudeDampingHandValue) {
  DensityOperator rho(q("A'"), ket_bra(2, 1));
  DensityOperator out = apply_channel(amplitude_damping_channel(0.3), rho, {"A'"});
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.3, 1e-14);
  EXPECT_NEAR(out.matrix()(1, 1).real(), 0.7, 1e-14);
  EXPECT_NEAR(std::abs(out.matrix()(0, 1)), 0.0, 1e-14);
}

TEST(ApplyChannel, ActsOnOneFactorOfABipartiteState) {
  DensityOperator rho = max_entangled("A", "A'", 2).density();
  DensityOperator out = apply_channel(depolarizing_channel(1.0), rho, {"A'"});
  EXPECT_LT(max_abs(out.matrix() - 0.25 * Matrix::Identity(4, 4)), 1e-14);
}

TEST(ApplyChannel, LabelMismatchThrows) {
  DensityOperator rho(q("X"), ket_bra(2, 0));
  EXPECT_THROW(apply_channel(identity_channel(3), rho, {"X"}), ValidationError);
  EXPECT_THROW(apply_channel(identity_channel(2), rho, {"Y"}), ValidationError);
  EXPECT_THROW(apply_channel(cnot_mac(), rho, {"X"}), ValidationError);
}

TEST(ApplyChannel, PreservesTraceAndPositivity) {
  Rng rng = make_rng(110);
  for (std::size_t d : {2, 3, 4}) {
    for (int trial = 0; trial < 200; ++trial) {
      KrausChannel ch = random_channel(q("A'", d), q("B", d), 1 + trial % 3, rng);
      DensityOperator rho(q("A'", d), random_density_matrix(d, rng));
      DensityOperator out = apply_channel(ch, rho, {"A'"});
      EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-9);
      EXPECT_GE(eig_hermitian(out.matrix()).values.minCoeff(), -1e-9);
    }
  }
}

TEST(Channels, KrausCompleteness) {
  std::vector<KrausChannel> all = {identity_channel(3), depolarizing_channel(0.4), amplitude_damping_channel(0.7),
                                   cnot_mac(), adder_mac(), parallel_identity_mac(2),
                                   named_channel("depolarizing-mac")};
  for (const auto& ch : all) {
    Matrix s = Matrix::Zero(static_cast<Eigen::Index>(ch.in_space().dim()),
                            static_cast<Eigen::Index>(ch.in_space().dim()));
    for (const auto& k : ch.kraus()) s += k.adjoint() * k;
    EXPECT_LT(max_abs(s - Matrix::Identity(s.rows(), s.cols())), 1e-10);
  }
}

TEST(Channels, NonTracePreservingRejected) {
  EXPECT_THROW(KrausChannel(q("A'"), q("B"), {0.5 * Matrix::Identity(2, 2)}), ValidationError);
}

TEST(Channels, UnknownNameRejected) { EXPECT_THROW(named_channel("teleporter"), ValidationError); }

TEST(Density, InvariantsEnforced) {
  EXPECT_THROW(DensityOperator(q("A"), Matrix::Identity(2, 2)), ValidationError);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityOperator(q("A"), neg), ValidationError);
  Vector v = Vector::Ones(2);
  EXPECT_THROW(PureState(q("A"), v), ValidationError);
}

TEST(Povm, OvercompleteRejectedAndAudited) {
  reset_povm_audit();
  PovmSet ok(q("A"), {ket_bra(2, 0), ket_bra(2, 1)});
  EXPECT_NEAR(ok.sum_max_eigenvalue(), 1.0, 1e-14);
  EXPECT_THROW(PovmSet(q("A"), {Matrix::Identity(2, 2), ket_bra(2, 0)}), ValidationError);
  PovmAudit a = povm_audit();
  EXPECT_EQ(a.count, 2u);
  EXPECT_EQ(a.violations, 1u);
}

TEST(Weyl, ShiftAndClockAction) {
  Matrix x = weyl_shift(3, 1);
  Matrix z = weyl_clock(3, 1);
  const double pi = std::acos(-1.0);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(std::abs(x((j + 1) % 3, j)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(z(j, j) - std::polar(1.0, 2 * pi * j / 3)), 0.0, 1e-14);
  }
}

TEST(Permute, RoundTrip) {
  Rng rng = make_rng(111);
  DensityOperator rho(FactorSpace({"A", "B", "C"}, {2, 3, 2}), random_density_matrix(12, rng));
  Operator p = permute(rho, {"C", "A", "B"});
  Operator back = permute(p, {"A", "B", "C"});
  EXPECT_LT(max_abs(back.matrix() - rho.matrix()), 1e-15);
  EXPECT_LT(max_abs(partial_trace(p, {"B"}).matrix() - partial_trace(rho, {"B"}).matrix()), 1e-12);
}

}  // namespace
}  // namespace qmac
