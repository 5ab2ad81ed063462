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

#ifndef QMAC_SIMULDECODE_HPP
#define QMAC_SIMULDECODE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qmac/eacode.hpp"
#include "qmac/qmat.hpp"

namespace qmac {

/// Alice's and Bob's codebooks, drawn from independent seeds.
struct MacCodePair {
  EaCodeBook book1;
  EaCodeBook book2;
  std::size_t L() const { return book1.message_count; }
  std::size_t M() const { return book2.message_count; }
};

/// Everything the MAC decoders need for one (channel, phi, psi, n, delta).
/// All projectors are full matrices on `space` (A_1 B_1 C_1 A_2 ...).
struct MacInstance {
  KrausChannel mac;
  PureState phi;
  PureState psi;
  std::size_t n = 0;
  double delta = 0;
  TypeDecomposition decomp_a;
  TypeDecomposition decomp_b;
  DensityOperator rho1;  // single copy on A B C...
  DensityOperator rho_n;
  FactorSpace space;
  Labels a_labels;  // A^n
  Labels b_labels;  // B^n
  Labels c_labels;  // C^n
  Matrix pi_a, pi_b, pi_c, pi_ab, pi_ac, pi_bc, pi_abc;
  Matrix hat1;  // Pi_A (x) Pi_BC
  Matrix hat2;  // Pi_B (x) Pi_AC
  Matrix hat3;  // Pi_C (x) Pi_AB

  std::size_t dim() const { return space.dim(); }
  /// U^T(s_1(l)) on A^n, embedded.
  Matrix alice_encoder(const MacCodePair& pair, std::size_t l) const;
  Matrix bob_encoder(const MacCodePair& pair, std::size_t m) const;
  /// sigma_{l,m}.
  Matrix codeword(const MacCodePair& pair, std::size_t l, std::size_t m) const;
  std::vector<Matrix> codewords(const MacCodePair& pair) const;
};

MacInstance make_mac_instance(const KrausChannel& mac, const PureState& phi, const PureState& psi,
                              std::size_t n, double delta);

/// Book 1 from seed1, book 2 from seed2.
MacCodePair sample_code_pair(const MacInstance& inst, std::size_t L, std::size_t M, std::uint64_t seed1,
                             std::uint64_t seed2);

/// V1 hat3 hat2 V2 Pi V2^dagger hat2 hat3 V1^dagger, V = U^T.
Matrix build_upsilon(const Matrix& v1, const Matrix& v2, const Matrix& hat2, const Matrix& hat3,
                     const Matrix& pi_abc);
Matrix build_upsilon(const MacInstance& inst, const MacCodePair& pair, std::size_t l, std::size_t m);
/// Index l * M + m.
std::vector<Matrix> build_upsilons(const MacInstance& inst, const MacCodePair& pair);

/// Lambda_i = S^{-1/2} Upsilon_i S^{-1/2}, S = sum Upsilon, pseudo-inverse with cutoff 1e-12.
PovmSet sqrt_measurement(const FactorSpace& space, const std::vector<Matrix>& upsilons);

/// 1 - (1/K) sum_i Tr{Lambda_i sigma_i}.
double average_error(const PovmSet& povm, const std::vector<Matrix>& states);
double average_error(const MacInstance& inst, const MacCodePair& pair, const PovmSet& povm);

/// Per-pair errors 1 - Tr{Lambda_i sigma_i}.
std::vector<double> pairwise_errors(const PovmSet& povm, const std::vector<Matrix>& states);

struct HnCheck {
  bool holds = false;
  double min_gap = 0;  // smallest eigenvalue of 2(I-S) + 4T - (I - (S+T)^{-1/2} S (S+T)^{-1/2})
};
HnCheck hayashi_nagaoka_check(const Matrix& s, const Matrix& t);

/// Entry l of book 1 becomes entry (l + shift1) mod L; likewise for book 2.
MacCodePair randomize_code(const MacCodePair& pair, std::size_t shift1, std::size_t shift2);

/// max over (l, m) of the (S, T)-averaged error when the senders encode l+S, m+T with the randomized
/// code and Charlie undoes the shift.
double max_error_via_randomization(const MacInstance& inst, const MacCodePair& pair, const PovmSet& povm);

/// sum_k sqrt(Lambda_k) (x) |k>, plus sqrt(I - sum Lambda) (x) |K> for the abort outcome.
struct CoherentDecoder {
  Matrix isometry;  // (dim * register_dim) x dim, register is the last factor
  std::size_t register_dim = 0;
  double isometry_defect = 0;  // max |W^dagger W - I|
};
CoherentDecoder coherent_decoder(const PovmSet& povm);

/// Expected overlap <target| W |omega> over the common-randomness shifts, with the channel purified and
/// the input registers carrying amplitudes alpha[j][l] and beta[k][m].
double coherent_fidelity(const MacInstance& inst, const MacCodePair& pair, const PovmSet& povm,
                         const Matrix& alpha, const Matrix& beta);

/// Terms of the Hayashi-Nagaoka split, averaged over (l, m).
struct ErrorBreakdown {
  double direct = 0;      // 2 Tr{(I - Upsilon_{l,m}) theta_{l,m}}
  double cross_l = 0;     // 4 sum_{l' != l} Tr{Upsilon_{l',m} theta_{l,m}}
  double cross_m = 0;     // 4 sum_{m' != m} Tr{Upsilon_{l,m'} theta_{l,m}}
  double cross_lm = 0;    // 4 sum_{l' != l, m' != m} Tr{Upsilon_{l',m'} theta_{l,m}}
  double gentle = 0;      // 2 sqrt(eps'), eps' = 1 - average Tr{hat1 V1 rho V1^dagger}
  double bound() const { return direct + cross_l + cross_m + cross_lm + gentle; }
};
ErrorBreakdown error_breakdown(const MacInstance& inst, const MacCodePair& pair,
                               const std::vector<Matrix>& upsilons);

/// Successive decoder with Pi = Pi_A Pi_B Pi_C, Pi_x = V1 (Pi_B (x) Pi_AC) V1^dagger,
/// Pi_xy = V1 V2 Pi_ABC V2^dagger V1^dagger.
PovmSet successive_mac_povm(const MacInstance& inst, const MacCodePair& pair);

struct MacReport {
  std::string mode;
  std::size_t n = 0;
  std::size_t L = 0;
  std::size_t M = 0;
  double delta = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double avg_error = 0;
  double avg_error_stderr = 0;
  double max_error_randomized = 0;
  double epsilon_measured = 0;
  double povm_sum_max = 0;  // largest eigenvalue of sum Lambda over all trials
  ErrorBreakdown breakdown;  // simultaneous mode only
  std::vector<std::array<std::uint64_t, 2>> seeds;
  std::vector<double> trial_errors;
};

/// Trial t uses book seeds make_rng(seed, 2t)() and make_rng(seed, 2t+1)().
MacReport simulate_mac(const MacInstance& inst, std::size_t L, std::size_t M, const std::string& mode,
                       std::uint64_t seed, std::size_t trials);

}  // namespace qmac

#endif
