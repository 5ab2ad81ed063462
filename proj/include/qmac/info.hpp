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

#ifndef QMAC_INFO_HPP
#define QMAC_INFO_HPP

#include <array>
#include <string>
#include <vector>

#include "qmac/qmat.hpp"

namespace qmac {

using Labels = std::vector<std::string>;

/// Pentagon {0 <= R1 <= r1, 0 <= R2 <= r2, R1 + R2 <= sum}, in bits per channel use.
struct RateRegion {
  double r1 = 0;
  double r2 = 0;
  double sum = 0;
  // Unclamped bounds; equal to the above unless a bound was negative.
  double raw_r1 = 0;
  double raw_r2 = 0;
  double raw_sum = 0;
  std::vector<std::array<double, 2>> vertices;

  bool contains(double x, double y, double tol = 1e-9) const;
};

/// Clamps negative bounds at 0 and enumerates the extreme points counter-clockwise from the origin.
RateRegion make_region(double r1, double r2, double sum);
RateRegion scale_region(const RateRegion& r, double factor);

/// {p(x), rho_x}, all states on one space.
struct Ensemble {
  std::vector<double> probs;
  std::vector<DensityOperator> states;

  void validate() const;
  DensityOperator average() const;
};

/// -sum lambda log2 lambda of the Hermitian part of `m`; tiny negative eigenvalues count as 0.
double entropy(const Matrix& m);
double von_neumann_entropy(const DensityOperator& rho);
/// Entropy of the marginal on `labels` (0 for an empty set).
double marginal_entropy(const DensityOperator& rho, const Labels& labels);

double mutual_information(const DensityOperator& rho, const Labels& a, const Labels& b);
/// I(A;B|C) = H(AC) + H(BC) - H(C) - H(ABC).
double conditional_mutual_information(const DensityOperator& rho, const Labels& a, const Labels& b,
                                      const Labels& conditioning);
/// I(A>B) = H(B) - H(AB).
double coherent_information(const DensityOperator& rho, const Labels& a, const Labels& b);

/// Maximally entangled state sum_j |jj>/sqrt(d).
PureState max_entangled(const std::string& left, const std::string& right, std::size_t d);
/// sum_z sqrt(p_z) |zz>.
PureState schmidt_state(const std::string& left, const std::string& right, const std::vector<double>& probs);

/// Reference label of a two-factor purification whose other factor is `channel_input`.
std::string reference_label(const PureState& phi, const std::string& channel_input);

/// rho^{ABC} = N(phi^{A'A} (x) psi^{B'B}), laid out as A, B, C...
DensityOperator mac_code_state(const KrausChannel& mac, const PureState& phi, const PureState& psi);

RateRegion ea_cc_region(const KrausChannel& mac, const PureState& phi, const PureState& psi);
RateRegion ea_q_region(const KrausChannel& mac, const PureState& phi, const PureState& psi);
RateRegion lsd_q_region(const KrausChannel& mac, const PureState& phi, const PureState& psi);

/// rho^{XYC} with X, Y stored as diagonal factors.
DensityOperator cq_code_state(const KrausChannel& mac, const Ensemble& x, const Ensemble& y);
RateRegion unassisted_cc_region(const KrausChannel& mac, const Ensemble& x, const Ensemble& y);

}  // namespace qmac

#endif
