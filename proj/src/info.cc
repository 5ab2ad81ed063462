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

#include "qmac/info.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

namespace qmac {

namespace {

Labels join_labels(const Labels& a, const Labels& b) {
  Labels out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_disjoint(const std::vector<const Labels*>& parts) {
  std::set<std::string> seen;
  for (const Labels* p : parts) {
    for (const auto& l : *p) {
      if (!seen.insert(l).second) throw ValidationError("label appears in more than one part: " + l);
    }
  }
}

void require_nonempty(const Labels& l, const char* what) {
  if (l.empty()) throw ValidationError(std::string(what) + " is empty");
}

}  // namespace

bool RateRegion::contains(double x, double y, double tol) const {
  return x >= -tol && y >= -tol && x <= r1 + tol && y <= r2 + tol && x + y <= sum + tol;
}

RateRegion make_region(double r1, double r2, double sum) {
  RateRegion r;
  r.raw_r1 = r1;
  r.raw_r2 = r2;
  r.raw_sum = sum;
  r.r1 = std::max(0.0, r1);
  r.r2 = std::max(0.0, r2);
  r.sum = std::max(0.0, sum);
  const double a = std::min(r.r1, r.sum);
  const double b = std::min(r.r2, r.sum);
  const double c = r.sum;
  std::vector<std::array<double, 2>> pts = {
      {0.0, 0.0}, {a, 0.0}, {a, std::min(b, c - a)}, {std::min(a, c - b), b}, {0.0, b}};
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : r.vertices) dup = dup || (p[0] == q[0] && p[1] == q[1]);
    if (!dup) r.vertices.push_back(p);
  }
  return r;
}

RateRegion scale_region(const RateRegion& r, double factor) {
  RateRegion s = make_region(r.raw_r1 * factor, r.raw_r2 * factor, r.raw_sum * factor);
  return s;
}

void Ensemble::validate() const {
  if (probs.empty() || probs.size() != states.size()) throw ValidationError("ensemble is empty or ragged");
  double total = 0;
  for (double p : probs) {
    if (!(p >= 0)) throw ValidationError("ensemble has a negative probability");
    total += p;
  }
  if (std::abs(total - 1) > 1e-12) throw ValidationError("ensemble is not normalized");
  for (const auto& s : states) {
    if (!(s.space() == states[0].space())) throw ValidationError("ensemble states live on different spaces");
  }
}

DensityOperator Ensemble::average() const {
  validate();
  Matrix m = Matrix::Zero(states[0].matrix().rows(), states[0].matrix().cols());
  for (std::size_t i = 0; i < probs.size(); ++i) m += probs[i] * states[i].matrix();
  return DensityOperator(states[0].space(), m);
}

double entropy(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  double h = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double l = es.eigenvalues()(k);
    if (l > 0) h -= l * std::log2(l);
  }
  return std::max(0.0, h);
}

double von_neumann_entropy(const DensityOperator& rho) { return entropy(rho.matrix()); }

double marginal_entropy(const DensityOperator& rho, const Labels& labels) {
  if (labels.empty()) return 0.0;
  if (labels.size() == rho.space().size()) {
    for (const auto& l : labels) rho.space().position(l);
    return entropy(rho.matrix());
  }
  return entropy(partial_trace(static_cast<const Operator&>(rho), labels).matrix());
}

double mutual_information(const DensityOperator& rho, const Labels& a, const Labels& b) {
  require_nonempty(a, "first part");
  require_nonempty(b, "second part");
  require_disjoint({&a, &b});
  return marginal_entropy(rho, a) + marginal_entropy(rho, b) - marginal_entropy(rho, join_labels(a, b));
}

double conditional_mutual_information(const DensityOperator& rho, const Labels& a, const Labels& b,
                                      const Labels& conditioning) {
  require_nonempty(a, "first part");
  require_nonempty(b, "second part");
  require_disjoint({&a, &b, &conditioning});
  const Labels& c = conditioning;
  return marginal_entropy(rho, join_labels(a, c)) + marginal_entropy(rho, join_labels(b, c)) -
         marginal_entropy(rho, c) - marginal_entropy(rho, join_labels(join_labels(a, b), c));
}

double coherent_information(const DensityOperator& rho, const Labels& a, const Labels& b) {
  require_nonempty(a, "first part");
  require_nonempty(b, "second part");
  require_disjoint({&a, &b});
  return marginal_entropy(rho, b) - marginal_entropy(rho, join_labels(a, b));
}

PureState max_entangled(const std::string& left, const std::string& right, std::size_t d) {
  return schmidt_state(left, right, std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

PureState schmidt_state(const std::string& left, const std::string& right, const std::vector<double>& probs) {
  const std::size_t d = probs.size();
  if (d == 0) throw ValidationError("empty Schmidt spectrum");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d * d));
  double total = 0;
  for (std::size_t z = 0; z < d; ++z) {
    if (!(probs[z] >= 0)) throw ValidationError("negative Schmidt probability");
    total += probs[z];
    v(static_cast<Eigen::Index>(z * d + z)) = std::sqrt(probs[z]);
  }
  if (std::abs(total - 1) > 1e-12) throw ValidationError("Schmidt probabilities do not sum to 1");
  v.normalize();
  return PureState(FactorSpace({left, right}, {d, d}), v);
}

std::string reference_label(const PureState& phi, const std::string& channel_input) {
  const auto& labels = phi.space().labels();
  if (labels.size() != 2 || !phi.space().has(channel_input)) {
    throw ValidationError("shared state must have exactly the factors " + channel_input + " and a reference");
  }
  return labels[0] == channel_input ? labels[1] : labels[0];
}

DensityOperator mac_code_state(const KrausChannel& mac, const PureState& phi, const PureState& psi) {
  if (mac.in_space().size() != 2) throw ValidationError("channel is not a two-sender MAC");
  const std::string& in_a = mac.in_space().labels()[0];
  const std::string& in_b = mac.in_space().labels()[1];
  std::string ref_a = reference_label(phi, in_a);
  std::string ref_b = reference_label(psi, in_b);
  if (phi.space().dim_of(in_a) != mac.in_space().dims()[0] || psi.space().dim_of(in_b) != mac.in_space().dims()[1]) {
    throw ValidationError("shared-state dimension does not match the MAC inputs");
  }
  DensityOperator joint = tensor(phi, psi).density();
  DensityOperator out = apply_channel(mac, joint, {in_a, in_b});
  Labels order = {ref_a, ref_b};
  order.insert(order.end(), mac.out_space().labels().begin(), mac.out_space().labels().end());
  return DensityOperator(permute(out, order));
}

RateRegion ea_cc_region(const KrausChannel& mac, const PureState& phi, const PureState& psi) {
  DensityOperator rho = mac_code_state(mac, phi, psi);
  Labels a = {rho.space().labels()[0]};
  Labels b = {rho.space().labels()[1]};
  Labels c = mac.out_space().labels();
  return make_region(conditional_mutual_information(rho, a, c, b), conditional_mutual_information(rho, b, c, a),
                     mutual_information(rho, join_labels(a, b), c));
}

RateRegion ea_q_region(const KrausChannel& mac, const PureState& phi, const PureState& psi) {
  return scale_region(ea_cc_region(mac, phi, psi), 0.5);
}

RateRegion lsd_q_region(const KrausChannel& mac, const PureState& phi, const PureState& psi) {
  DensityOperator rho = mac_code_state(mac, phi, psi);
  Labels a = {rho.space().labels()[0]};
  Labels b = {rho.space().labels()[1]};
  Labels c = mac.out_space().labels();
  const double habc = von_neumann_entropy(rho);
  return make_region(marginal_entropy(rho, join_labels(b, c)) - habc, marginal_entropy(rho, join_labels(a, c)) - habc,
                     marginal_entropy(rho, c) - habc);
}

DensityOperator cq_code_state(const KrausChannel& mac, const Ensemble& x, const Ensemble& y) {
  if (mac.in_space().size() != 2) throw ValidationError("channel is not a two-sender MAC");
  x.validate();
  y.validate();
  const std::string& in_a = mac.in_space().labels()[0];
  const std::string& in_b = mac.in_space().labels()[1];
  if (x.states[0].dim() != mac.in_space().dims()[0] || y.states[0].dim() != mac.in_space().dims()[1]) {
    throw ValidationError("ensemble dimension does not match the MAC inputs");
  }
  const std::size_t nx = x.probs.size();
  const std::size_t ny = y.probs.size();
  const auto dc = static_cast<Eigen::Index>(mac.out_space().dim());
  FactorSpace in_space({in_a, in_b}, mac.in_space().dims());
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(nx * ny) * dc, static_cast<Eigen::Index>(nx * ny) * dc);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      double w = x.probs[i] * y.probs[j];
      if (w == 0) continue;
      DensityOperator in(in_space, kron(x.states[i].matrix(), y.states[j].matrix()));
      DensityOperator out = apply_channel(mac, in, {in_a, in_b});
      auto off = static_cast<Eigen::Index>(i * ny + j) * dc;
      m.block(off, off, dc, dc) = w * out.matrix();
    }
  }
  std::vector<std::string> labels = {"X", "Y"};
  std::vector<std::size_t> dims = {nx, ny};
  labels.insert(labels.end(), mac.out_space().labels().begin(), mac.out_space().labels().end());
  dims.insert(dims.end(), mac.out_space().dims().begin(), mac.out_space().dims().end());
  return DensityOperator(FactorSpace(labels, dims), m);
}

RateRegion unassisted_cc_region(const KrausChannel& mac, const Ensemble& x, const Ensemble& y) {
  DensityOperator rho = cq_code_state(mac, x, y);
  Labels c = mac.out_space().labels();
  return make_region(conditional_mutual_information(rho, {"X"}, c, {"Y"}),
                     conditional_mutual_information(rho, {"Y"}, c, {"X"}), mutual_information(rho, {"X", "Y"}, c));
}

}  // namespace qmac
