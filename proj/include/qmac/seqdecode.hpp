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

#ifndef QMAC_SEQDECODE_HPP
#define QMAC_SEQDECODE_HPP

#include <cstdint>
#include <vector>

#include "qmac/eacode.hpp"
#include "qmac/qmat.hpp"
#include "qmac/typicality.hpp"

namespace qmac {

/// Codebooks enumerated exactly while |X|^M stays at or below this.
constexpr std::uint64_t kExhaustiveCodebookCap = 100000;

/// Lambda_m = Qb_{c_1} ... Qb_{c_{m-1}} Pib_{c_m} Qb_{c_{m-1}} ... Qb_{c_1}, Thetab = Pi Theta Pi, Q = I - Pi_x.
/// `message_projectors[m]` is Pi_{c_m}.
PovmSet sequential_povm(const FactorSpace& space, const Matrix& code_projector,
                        const std::vector<Matrix>& message_projectors);
/// Letter-indexed variant: message m uses letter code[m].
PovmSet sequential_povm(const FactorSpace& space, const std::vector<std::size_t>& code,
                        const Matrix& code_projector, const std::vector<Matrix>& letter_projectors);

/// (1/M) sum_m Tr{Lambda_m rho_m}.
double exact_success_probability(const PovmSet& povm, const std::vector<Matrix>& message_states);

/// Same value as building the sequential POVM, without materializing it.
double sequential_success(const Matrix& code_projector, const std::vector<const Matrix*>& message_projectors,
                          const std::vector<const Matrix*>& message_states);

/// Codebooks drawn i.i.d. from p over letters with states rho_x and projectors Pi_x.
struct LetterEnsemble {
  std::vector<double> probs;
  std::vector<Matrix> states;
  std::vector<Matrix> projectors;
};

/// Exact E_C{p_succ} over all |X|^M codebooks; DimensionCapError above kExhaustiveCodebookCap.
double expected_success_exhaustive(const LetterEnsemble& ens, const Matrix& code_projector,
                                   std::size_t message_count);

struct MonteCarloEstimate {
  double mean = 0;
  double stderr_ = 0;
  std::size_t samples = 0;
};
MonteCarloEstimate expected_success_monte_carlo(const LetterEnsemble& ens, const Matrix& code_projector,
                                                std::size_t message_count, std::size_t samples,
                                                std::uint64_t seed);

struct PackingBound {
  double value = 0;
  double growth = 0;       // 2 - exp(d M / D)
  bool positive = false;   // growth > 0
  bool eps_ok = false;     // epsilon <= 1/2
  bool valid() const { return positive && eps_ok; }
};

/// |(1 - 2 eps)(2 - e^{d M / D})|^2, or 0 with flags cleared when a hypothesis fails.
PackingBound packing_lower_bound(double epsilon, double d, double D, std::size_t message_count);
PackingBound packing_lower_bound(const PackingConstants& c, std::size_t message_count);

/// f_z = Tr{W_1 Pi Wb_0^z}, W_1 = sum p Pi_x rho_x Pi_x, Wb_0 = Pi (sum p Pi_x) Pi.
std::vector<double> packing_diagnostics(const LetterEnsemble& ens, const Matrix& code_projector,
                                        std::size_t z_max);

struct SequentialReport {
  double success_mean = 0;
  double success_stderr = 0;
  PackingBound bound;
  PackingConstants constants;
  std::size_t n = 0;
  std::size_t message_count = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool exhaustive = false;
  double delta = 0;
};

/// EA sequential decoding with Pi = Pi_A (x) Pi_B and Pi_s = U^T Pi_AB U^*.
SequentialReport ea_sequential_protocol(const KrausChannel& channel, const PureState& phi, std::size_t n,
                                        std::size_t message_count, double delta, std::uint64_t seed,
                                        std::size_t trials);

struct SuccessiveConstants {
  double epsilon = 0;
  double eps_prime = 0;
  double d1_minus = 0;
  double d1_plus = 0;
  double d2 = 0;
  double D1 = 0;
  std::size_t L = 0;
  std::size_t M = 0;
};

struct SuccessiveBound {
  double raw = 0;
  double clamped = 0;
  double packing_term = 0;
  double gentle_term = 0;  // 2 sqrt(2(eps + eps'))
  bool positive = false;
};

SuccessiveBound successive_bound(const SuccessiveConstants& c);
/// Smallest eps' with 2 - e^{d1^- L / D1} >= 1 - eps'.
double consistent_eps_prime(double d1_minus, std::size_t L, double D1);

/// M_{l,m} = Pi_{x(l),y(m)} Qbb ... Qbb Pi_{x(l)} Qb_{x(l-1)} ... Qb_{x(1)}, Lambda = M^dagger M, index l*M + m.
/// For l = 1 the first measurement of Pi is kept explicitly.
PovmSet successive_povm(const FactorSpace& space, const Matrix& code_projector,
                        const std::vector<Matrix>& first_projectors,
                        const std::vector<std::vector<Matrix>>& pair_projectors);

/// Measured Thm-3 hypotheses on a product ensemble p(x) p(y) rho_{x,y}.
SuccessiveConstants measure_successive_constants(const std::vector<double>& px, const std::vector<double>& py,
                                                 const std::vector<std::vector<Matrix>>& states,
                                                 const Matrix& code_projector,
                                                 const std::vector<Matrix>& first_projectors,
                                                 const std::vector<std::vector<Matrix>>& pair_projectors,
                                                 std::size_t L, std::size_t M);

/// log2 of (D1, d1-, d1+, d2).
struct SuccessiveExponents {
  double log_D1 = 0;
  double log_d1_minus = 0;
  double log_d1_plus = 0;
  double log_d2 = 0;
};
SuccessiveExponents unassisted_exponents(double h_b, double h_b_given_x, double h_b_given_xy, std::size_t n,
                                         double delta);
SuccessiveExponents assisted_exponents(double h_a, double h_b, double h_c, double h_ac, double h_abc,
                                       std::size_t n, double delta);

}  // namespace qmac

#endif
