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

#ifndef QMAC_GAUSSIAN_HPP
#define QMAC_GAUSSIAN_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmac/info.hpp"

namespace qmac {

using RealMatrix = Eigen::MatrixXd;

/// (N+1) log2(N+1) - N log2 N; N in (-1e-12, 0) clamps to 0.
double g_entropy(double n);

/// Direct sum of [[0, 1], [-1, 0]] blocks; quadratures ordered (x_1, p_1, x_2, p_2, ...).
RealMatrix symplectic_form(std::size_t modes);

/// Vacuum = identity; a thermal mode is diag(2N+1, 2N+1).
class CovarianceState {
 public:
  CovarianceState() = default;
  CovarianceState(std::vector<std::string> modes, RealMatrix v);

  const std::vector<std::string>& modes() const { return modes_; }
  const RealMatrix& matrix() const { return v_; }
  std::size_t mode_count() const { return modes_.size(); }
  std::size_t position(const std::string& mode) const;

  /// Marginal on `modes`, in the order given.
  CovarianceState select(const std::vector<std::string>& modes) const;
  CovarianceState renamed(const std::vector<std::string>& modes) const;

 private:
  std::vector<std::string> modes_;
  RealMatrix v_;
};

CovarianceState direct_sum(const CovarianceState& a, const CovarianceState& b);
CovarianceState thermal_state(const std::string& mode, double n);

class SymplecticMap {
 public:
  SymplecticMap() = default;
  explicit SymplecticMap(RealMatrix s);
  const RealMatrix& matrix() const { return s_; }
  std::size_t mode_count() const { return static_cast<std::size_t>(s_.rows()) / 2; }

 private:
  RealMatrix s_;
};

/// Modes (first, second) with the sign pattern (c, -c) on the off-diagonal blocks; N_S = 0 gives the vacuum.
CovarianceState tms_covariance(double ns, const std::string& first = "A", const std::string& second = "A'");
/// [sqrt(eta) I, sqrt(1-eta) I; -sqrt(1-eta) I, sqrt(eta) I].
SymplecticMap beamsplitter_symplectic(double eta);
/// S on `modes` (in that order), identity on the rest.
CovarianceState apply_symplectic(const SymplecticMap& s, const CovarianceState& v,
                                 const std::vector<std::string>& modes);

/// Descending; |spec(iJV)| sorted and paired.
std::vector<double> symplectic_eigenvalues(const CovarianceState& v);
/// sum_k g((nu_k + 1)/2 - 1).
double gaussian_entropy(const CovarianceState& v);

struct BosonicMacParams {
  double eta = 0;
  double nsa = 0;
  double nsb = 0;
  void validate() const;
};

/// lambda^(+/-) for AC; the BC pair is the same with eta -> 1 - eta.
std::array<double, 2> lambda_ac(const BosonicMacParams& p);
std::array<double, 2> lambda_bc(const BosonicMacParams& p);

/// Closed-form region with |lambda|.
RateRegion ea_bosonic_region(const BosonicMacParams& p);

/// Four-mode output in the order A, C, B, E.
CovarianceState bosonic_output_state(const BosonicMacParams& p);

struct BosonicEntropies {
  double a = 0, b = 0, c = 0, ab = 0, ac = 0, bc = 0, abc = 0, e = 0, be = 0, ae = 0;
};
BosonicEntropies bosonic_entropies(const BosonicMacParams& p);

/// Same region from the seven marginal entropies of bosonic_output_state.
RateRegion ea_bosonic_region_numeric(const BosonicMacParams& p);

RateRegion yen_shapiro_bound(const BosonicMacParams& p);

struct VertexCheck {
  double r1 = 0;
  double r2 = 0;
  bool inside = false;
};

struct RegionComparison {
  RateRegion ea;
  RateRegion ys;
  double sum_gap = 0;
  bool ea_contains_ys = false;
  std::vector<VertexCheck> vertices;  // Yen-Shapiro vertices tested against the assisted region
};
RegionComparison compare_regions(const BosonicMacParams& p);

struct SweepRow {
  double eta = 0;
  RateRegion ea;
  RateRegion ys;
  double sum_gap = 0;
};

/// `steps` equally spaced points on [0, 1], endpoints included.
std::vector<double> eta_grid(std::size_t steps);
std::vector<SweepRow> region_sweep(double nsa, double nsb, const std::vector<double>& etas);
/// Header eta,r1,r2,sum,ys_r1,ys_r2,ys_sum,sum_gap; 12 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Shortest locale-independent rendering at 12 significant digits.
std::string format_number(double x);

}  // namespace qmac

#endif
