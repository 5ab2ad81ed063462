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
#include "qmac/info.hpp"
#include "qmac/random.hpp"
#include "qmac/simuldecode.hpp"

namespace qmac {
namespace {

Matrix proj(const Vector& v) { return v * v.adjoint(); }

Matrix random_projector(std::size_t d, std::size_t rank, Rng& rng) {
  Matrix c = random_unitary(d, rng).leftCols(static_cast<Eigen::Index>(rank));
  return c * c.adjoint();
}

MacInstance cnot_instance(std::size_t n = 1, double delta = 0.5) {
  return make_mac_instance(cnot_mac(), max_entangled("A", "A'", 2), max_entangled("B", "B'", 2), n, delta);
}

double min_eig(const Matrix& m) { return eig_hermitian(m).values.minCoeff(); }

TEST(Upsilon, ZeroAndIdentityCases) {
  Matrix id = Matrix::Identity(4, 4);
  EXPECT_LT(max_abs(build_upsilon(id, id, id, id, Matrix::Zero(4, 4))), 1e-15);
  EXPECT_LT(max_abs(build_upsilon(id, id, id, id, id) - id), 1e-15);
  EXPECT_THROW(build_upsilon(id, id, id, id, Matrix::Identity(2, 2)), ValidationError);
}

TEST(Upsilon, CnotInstanceIsPositive) {
  MacInstance inst = cnot_instance();
  MacCodePair pair = sample_code_pair(inst, 2, 2, 1, 2);
  for (const auto& u : build_upsilons(inst, pair)) {
    EXPECT_LT(hermitian_defect(u), 1e-12);
    EXPECT_GE(min_eig(u), -1e-12);
  }
}

TEST(SqrtMeasurement, SingleElementIsSupportProjector) {
  Rng rng = make_rng(601);
  Matrix g = random_ginibre(4, 2, rng);
  Matrix u = g * g.adjoint();
  PovmSet povm = sqrt_measurement(FactorSpace({"C"}, {4}), {u});
  EXPECT_LT(max_abs(povm.elements()[0] - support_projector(u)), 1e-9);
}

TEST(SqrtMeasurement, OrthogonalSupports) {
  Rng rng = make_rng(602);
  Matrix w = random_unitary(4, rng);
  Matrix p0 = proj(w.col(0)) + proj(w.col(1));
  Matrix p1 = proj(w.col(2));
  PovmSet povm = sqrt_measurement(FactorSpace({"C"}, {4}), {3.0 * p0, 0.2 * p1});
  EXPECT_LT(max_abs(povm.elements()[0] - p0), 1e-10);
  EXPECT_LT(max_abs(povm.elements()[1] - p1), 1e-10);
}

TEST(SqrtMeasurement, SumIsAProjector) {
  Rng rng = make_rng(603);
  for (int t = 0; t < 30; ++t) {
    std::vector<Matrix> ups;
    for (int i = 0; i < 3; ++i) {
      Matrix g = random_ginibre(4, 1, rng);
      ups.push_back(g * g.adjoint());
    }
    PovmSet povm = sqrt_measurement(FactorSpace({"C"}, {4}), ups);
    Matrix sum = Matrix::Zero(4, 4);
    for (const auto& e : povm.elements()) sum += e;
    for (double v : eig_hermitian(sum).values) EXPECT_LT(std::min(std::abs(v), std::abs(v - 1)), 1e-8);
  }
}

TEST(AverageError, PerfectDiscrimination) {
  std::vector<Matrix> states;
  for (int i = 0; i < 4; ++i) states.push_back(proj(Vector::Unit(4, i)));
  EXPECT_NEAR(average_error(PovmSet(FactorSpace({"C"}, {4}), states), states), 0, 1e-15);
}

TEST(AverageError, UniformPovm) {
  Rng rng = make_rng(604);
  const std::size_t k = 6;
  std::vector<Matrix> els(k, Matrix::Identity(3, 3) / static_cast<double>(k));
  std::vector<Matrix> states;
  for (std::size_t i = 0; i < k; ++i) states.push_back(random_density_matrix(3, rng));
  EXPECT_NEAR(average_error(PovmSet(FactorSpace({"C"}, {3}), els), states), 1 - 1.0 / k, 1e-14);
}

TEST(AverageError, CnotMatchesOutcomeEnumeration) {
  MacInstance inst = cnot_instance();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MacCodePair pair = sample_code_pair(inst, 2, 2, 10 + seed, 20 + seed);
    PovmSet povm = sqrt_measurement(inst.space, build_upsilons(inst, pair));
    auto states = inst.codewords(pair);
    // Outcome distribution per codeword, including the abort outcome I - sum Lambda.
    Matrix abort = Matrix::Identity(8, 8);
    for (const auto& e : povm.elements()) abort -= e;
    double correct = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      double total = (abort * states[i]).trace().real();
      for (std::size_t k = 0; k < 4; ++k) {
        const double p = (povm.elements()[k] * states[i]).trace().real();
        total += p;
        if (k == i) correct += p;
      }
      EXPECT_NEAR(total, 1, 1e-12);
    }
    const double err = average_error(inst, pair, povm);
    EXPECT_NEAR(err, 1 - correct / 4, 1e-12);
    EXPECT_GE(err, -1e-9);
    EXPECT_LE(err, 1 + 1e-9);
  }
}

TEST(AverageError, CodewordsAreEncodedOutputs) {
  MacInstance inst = cnot_instance();
  MacCodePair pair = sample_code_pair(inst, 2, 2, 3, 4);
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t m = 0; m < 2; ++m) {
      Matrix v = inst.alice_encoder(pair, l) * inst.bob_encoder(pair, m);
      EXPECT_LT(max_abs(inst.codeword(pair, l, m) - v * inst.rho_n.matrix() * v.adjoint()), 1e-12);
    }
  }
}

TEST(HayashiNagaoka, ProjectorWithZeroT) {
  Rng rng = make_rng(605);
  Matrix s = random_projector(3, 2, rng);
  HnCheck c = hayashi_nagaoka_check(s, Matrix::Zero(3, 3));
  EXPECT_TRUE(c.holds);
  EXPECT_NEAR(c.min_gap, 0, 1e-9);
}

TEST(HayashiNagaoka, HalfIdentities) {
  Matrix h = 0.5 * Matrix::Identity(3, 3);
  HnCheck c = hayashi_nagaoka_check(h, h);
  EXPECT_TRUE(c.holds);
  EXPECT_NEAR(c.min_gap, 2.5, 1e-12);
}

TEST(HayashiNagaoka, RandomPairs) {
  Rng rng = make_rng(606);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t) % 5;
    Eigensystem es = eig_hermitian(random_hermitian(d, rng));
    RealVector w = es.values;
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = 1 / (1 + std::exp(-w(i)));
    Matrix s = es.vectors * w.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    Matrix g = random_ginibre(d, 1 + static_cast<std::size_t>(t) % d, rng);
    HnCheck c = hayashi_nagaoka_check(s, g * g.adjoint());
    EXPECT_TRUE(c.holds) << c.min_gap;
  }
}

TEST(HayashiNagaoka, PreconditionsEnforced) {
  Matrix big = 2.0 * Matrix::Identity(2, 2);
  EXPECT_THROW(hayashi_nagaoka_check(big, Matrix::Zero(2, 2)), ValidationError);
  EXPECT_THROW(hayashi_nagaoka_check(Matrix::Identity(2, 2), -Matrix::Identity(2, 2)), ValidationError);
}

TEST(Randomization, ZeroShiftIsIdentity) {
  MacInstance inst = cnot_instance();
  MacCodePair pair = sample_code_pair(inst, 3, 2, 5, 6);
  MacCodePair same = randomize_code(pair, 0, 0);
  EXPECT_EQ(same.book1.entries, pair.book1.entries);
  EXPECT_EQ(same.book2.entries, pair.book2.entries);
  MacCodePair moved = randomize_code(pair, 1, 1);
  EXPECT_EQ(moved.book1.entries[0], pair.book1.entries[1]);
  EXPECT_EQ(moved.book1.entries[2], pair.book1.entries[0]);
}

TEST(Randomization, MaxEqualsAverageByExplicitShifts) {
  MacInstance inst = cnot_instance();
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    MacCodePair pair = sample_code_pair(inst, 2, 2, 30 + seed, 40 + seed);
    PovmSet povm = sqrt_measurement(inst.space, build_upsilons(inst, pair));
    // Sender l with shift s transmits codeword (l+s); Charlie's outcome is compared against (l+s).
    auto errs = pairwise_errors(povm, inst.codewords(pair));
    double worst = 0;
    for (std::size_t l = 0; l < 2; ++l) {
      for (std::size_t m = 0; m < 2; ++m) {
        double avg = 0;
        for (std::size_t s = 0; s < 2; ++s) {
          for (std::size_t t = 0; t < 2; ++t) avg += errs[((l + s) % 2) * 2 + (m + t) % 2] / 4;
        }
        worst = std::max(worst, avg);
      }
    }
    const double mean = average_error(inst, pair, povm);
    EXPECT_NEAR(worst, mean, 1e-12);
    EXPECT_NEAR(max_error_via_randomization(inst, pair, povm), mean, 1e-12);
    PovmSet succ = successive_mac_povm(inst, pair);
    EXPECT_NEAR(max_error_via_randomization(inst, pair, succ), average_error(inst, pair, succ), 1e-12);
  }
}

TEST(CoherentDecoder, TrivialPovm) {
  CoherentDecoder dec = coherent_decoder(PovmSet(FactorSpace({"C"}, {3}), {Matrix::Identity(3, 3)}));
  EXPECT_EQ(dec.register_dim, 2u);
  Matrix expected = Matrix::Zero(6, 3);
  for (int i = 0; i < 3; ++i) expected(i * 2, i) = 1;
  EXPECT_LT(max_abs(dec.isometry - expected), 1e-12);
  EXPECT_LT(dec.isometry_defect, 1e-12);
}

TEST(CoherentDecoder, IncompletePovmGetsAbortBranch) {
  Rng rng = make_rng(607);
  Matrix p = random_projector(4, 2, rng);
  CoherentDecoder dec = coherent_decoder(PovmSet(FactorSpace({"C"}, {4}), {0.3 * p, 0.2 * p}));
  EXPECT_EQ(dec.register_dim, 3u);
  EXPECT_LT(dec.isometry_defect, 1e-9);
}

// Stinespring vector of the cnot MAC on A B C E from its Kraus operators.
Vector cnot_purification() {
  KrausChannel mac = cnot_mac();
  Vector v = Vector::Zero(16);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Vector in = Vector::Zero(4);
      in(a * 2 + b) = 0.5;  // Bell amplitudes 1/sqrt2 * 1/sqrt2
      for (int k = 0; k < 2; ++k) {
        Vector out = mac.kraus()[static_cast<std::size_t>(k)] * in;
        for (int c = 0; c < 2; ++c) v(((a * 2 + b) * 2 + c) * 2 + k) += out(c);
      }
    }
  }
  return v;
}

TEST(CoherentFidelity, FullVectorOracle) {
  MacInstance inst = cnot_instance();
  MacCodePair pair = sample_code_pair(inst, 2, 2, 12, 13);
  PovmSet povm = sqrt_measurement(inst.space, build_upsilons(inst, pair));
  CoherentDecoder dec = coherent_decoder(povm);
  const auto reg = static_cast<Eigen::Index>(dec.register_dim);
  Matrix alpha(2, 2), beta(2, 2);
  alpha << 0.6, 0.0, 0.0, 0.8;
  beta << Complex(0.5, 0), Complex(0.5, 0), Complex(0, 0.5), Complex(0.5, 0);

  const Vector base = cnot_purification();
  std::vector<Vector> words;
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t q = 0; q < 2; ++q) {
      Matrix va = receiver_encoder(pair.book1.entries[p], inst.decomp_a);
      Matrix vb = receiver_encoder(pair.book2.entries[q], inst.decomp_b);
      words.push_back(kron(kron(va, vb), Matrix::Identity(4, 4)) * base);
    }
  }
  // Index layout of the full vector: (j k l m) references, then A B C, register, E.
  auto decode = [&](const Vector& w) {
    Vector out = Vector::Zero(8 * reg * 2);
    for (int e = 0; e < 2; ++e) {
      Vector x(8);
      for (int abc = 0; abc < 8; ++abc) x(abc) = w(abc * 2 + e);
      Vector y = dec.isometry * x;
      for (Eigen::Index r = 0; r < y.size(); ++r) out(r * 2 + e) = y(r);
    }
    return out;
  };
  auto with_register = [&](const Vector& w, Eigen::Index i) {
    Vector out = Vector::Zero(8 * reg * 2);
    for (int abc = 0; abc < 8; ++abc) {
      for (int e = 0; e < 2; ++e) out((abc * reg + i) * 2 + e) = w(abc * 2 + e);
    }
    return out;
  };
  const Eigen::Index block = 8 * reg * 2;
  double total = 0;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t t = 0; t < 2; ++t) {
      Vector omega_out = Vector::Zero(16 * block);
      Vector target = Vector::Zero(16 * block);
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          for (int l = 0; l < 2; ++l) {
            for (int m = 0; m < 2; ++m) {
              const Complex amp = alpha(j, l) * beta(k, m);
              const auto i = static_cast<Eigen::Index>(((l + s) % 2) * 2 + (m + t) % 2);
              const Eigen::Index ref = ((j * 2 + k) * 2 + l) * 2 + m;
              omega_out.segment(ref * block, block) = amp * decode(words[static_cast<std::size_t>(i)]);
              target.segment(ref * block, block) = amp * with_register(words[static_cast<std::size_t>(i)], i);
            }
          }
        }
      }
      total += target.dot(omega_out).real() / 4;
    }
  }
  const double fid = coherent_fidelity(inst, pair, povm, alpha, beta);
  EXPECT_NEAR(fid, total, 1e-12);
  EXPECT_GE(fid, 1 - average_error(inst, pair, povm) - 1e-12);
}

TEST(CoherentFidelity, OrthogonalCodewordsGiveOne) {
  // Noiseless parallel MAC with d = 1 types: every codeword is a distinct Bell pattern only when the books
  // pick different sign patterns, so use a projective POVM onto the codewords themselves.
  MacInstance inst = make_mac_instance(parallel_identity_mac(2), max_entangled("A", "A'", 2),
                                       max_entangled("B", "B'", 2), 1, 0.5);
  MacCodePair pair;
  pair.book1.message_count = 1;
  pair.book2.message_count = 1;
  HwIndex zero;
  zero.entries = {{0, 0, 0}, {0, 0, 0}};
  pair.book1.entries = {zero};
  pair.book2.entries = {zero};
  Matrix w = inst.codeword(pair, 0, 0);
  PovmSet povm(inst.space, {support_projector(w)});
  Matrix one = Matrix::Ones(1, 1);
  EXPECT_NEAR(coherent_fidelity(inst, pair, povm, one, one), 1, 1e-10);
}

TEST(CoherentFidelity, AmplitudesValidated) {
  MacInstance inst = cnot_instance();
  MacCodePair pair = sample_code_pair(inst, 2, 2, 1, 2);
  PovmSet povm = sqrt_measurement(inst.space, build_upsilons(inst, pair));
  Matrix bad = Matrix::Ones(2, 2);
  Matrix good = Matrix::Identity(2, 2) / std::sqrt(2.0);
  EXPECT_THROW(coherent_fidelity(inst, pair, povm, bad, good), ValidationError);
}

TEST(ExpectedCodeword, TwirlOverBobsIndices) {
  MacInstance inst = cnot_instance();
  auto all = all_indices(inst.decomp_b);
  MacCodePair pair;
  pair.book1.message_count = 1;
  HwIndex zero;
  for (std::size_t t = 0; t < inst.decomp_a.types.size(); ++t) zero.entries.push_back({0, 0, 0});
  pair.book1.entries = {zero};
  pair.book2.message_count = all.size();
  pair.book2.entries = all;
  Matrix avg = Matrix::Zero(8, 8);
  for (std::size_t m = 0; m < all.size(); ++m) {
    Matrix v = inst.bob_encoder(pair, m);
    avg += v * inst.rho_n.matrix() * v.adjoint() / static_cast<double>(all.size());
  }
  // sum_t p(t) pi_t^B (x) N(phi (x) pi_t^{B'}), with singleton types |t> of the Bell state.
  Matrix expected = Matrix::Zero(8, 8);
  KrausChannel mac = cnot_mac();
  Matrix phi = proj(max_entangled("A", "A'", 2).vector());
  for (int t = 0; t < 2; ++t) {
    Matrix pt = proj(Vector::Unit(2, t));
    Matrix in = kron(phi, pt);  // A A' B'
    Matrix out = Matrix::Zero(4, 4);  // A C
    for (const auto& k : mac.kraus()) {
      Matrix big = kron(Matrix::Identity(2, 2), k);
      out += big * in * big.adjoint();
    }
    // Reorder A C (x) B into A B C.
    Matrix acb = kron(out, pt);
    Matrix abc = Matrix::Zero(8, 8);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int a2 = 0; a2 < 2; ++a2)
            for (int b2 = 0; b2 < 2; ++b2)
              for (int c2 = 0; c2 < 2; ++c2) abc(a * 4 + b * 2 + c, a2 * 4 + b2 * 2 + c2) = acb(a * 4 + c * 2 + b, a2 * 4 + c2 * 2 + b2);
    expected += 0.5 * abc;
  }
  EXPECT_LT(max_abs(avg - expected), 1e-9);
}

TEST(Breakdown, BoundsTheError) {
  MacInstance inst = cnot_instance();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MacCodePair pair = sample_code_pair(inst, 2, 2, 50 + seed, 60 + seed);
    auto ups = build_upsilons(inst, pair);
    PovmSet povm = sqrt_measurement(inst.space, ups);
    ErrorBreakdown b = error_breakdown(inst, pair, ups);
    EXPECT_GE(b.direct, -1e-12);
    EXPECT_GE(b.cross_l, -1e-12);
    EXPECT_GE(b.cross_m, -1e-12);
    EXPECT_GE(b.cross_lm, -1e-12);
    EXPECT_GE(b.bound(), average_error(inst, pair, povm) - 1e-9);
  }
}

TEST(Simulation, ReportsAreDeterministicAndComplete) {
  MacInstance inst = cnot_instance();
  for (const char* mode : {"simultaneous", "successive"}) {
    MacReport a = simulate_mac(inst, 2, 2, mode, 7, 5);
    MacReport b = simulate_mac(inst, 2, 2, mode, 7, 5);
    EXPECT_EQ(a.trial_errors, b.trial_errors);
    EXPECT_EQ(a.seeds, b.seeds);
    EXPECT_EQ(a.seeds.size(), 5u);
    EXPECT_NEAR(a.max_error_randomized, a.avg_error, 1e-12);
    EXPECT_LE(a.povm_sum_max, 1 + 1e-9);
    for (double e : a.trial_errors) {
      EXPECT_GE(e, -1e-9);
      EXPECT_LE(e, 1 + 1e-9);
    }
  }
  EXPECT_THROW(simulate_mac(inst, 2, 2, "parallel", 7, 1), ValidationError);
}

TEST(Simulation, NoiselessSingleMessagePair) {
  MacInstance inst = make_mac_instance(parallel_identity_mac(2), max_entangled("A", "A'", 2),
                                       max_entangled("B", "B'", 2), 1, 0.5);
  for (const char* mode : {"simultaneous", "successive"}) {
    EXPECT_NEAR(simulate_mac(inst, 1, 1, mode, 1, 3).avg_error, 0, 1e-9);
  }
}

TEST(Simulation, ErrorDoesNotGrowFromOneToTwoCopies) {
  for (const char* mode : {"simultaneous", "successive"}) {
    const double e1 = simulate_mac(cnot_instance(1), 2, 2, mode, 11, 20).avg_error;
    const double e2 = simulate_mac(cnot_instance(2), 2, 2, mode, 11, 20).avg_error;
    EXPECT_LE(e2, e1 + 1e-12) << mode;
  }
}

}  // namespace
}  // namespace qmac
