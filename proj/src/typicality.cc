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

#include "qmac/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qmac {

namespace {

// Eigenvalues at or below this are treated as exact zeros.
constexpr double kZeroEigenvalue = 1e-14;
// Slack on the typicality window, so boundary sequences are not lost to rounding.
constexpr double kWindowSlack = 1e-12;

void compositions(std::size_t remaining, std::size_t slot, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (slot + 1 == cur.size()) {
    cur[slot] = remaining;
    out.push_back(cur);
    return;
  }
  for (std::size_t c = remaining + 1; c-- > 0;) {
    cur[slot] = c;
    compositions(remaining - c, slot + 1, cur, out);
  }
}

std::size_t multinomial(std::size_t n, const std::vector<std::size_t>& counts) {
  // Product of binomials, exact in integers.
  std::size_t result = 1;
  std::size_t left = n;
  for (std::size_t c : counts) {
    std::size_t b = 1;
    for (std::size_t i = 1; i <= c; ++i) b = b * (left - c + i) / i;
    result *= b;
    left -= c;
  }
  return result;
}

}  // namespace

std::size_t sequence_count(std::size_t n, std::size_t alphabet_size) {
  if (n == 0 || alphabet_size == 0) throw ValidationError("types need n >= 1 and a nonempty alphabet");
  const std::size_t cap = dimension_cap();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / alphabet_size + 1) {
      // Report the true size where it fits in a double.
      double full = std::pow(static_cast<double>(alphabet_size), static_cast<double>(n));
      throw DimensionCapError(full < 1.8e19 ? static_cast<std::size_t>(full) : std::numeric_limits<std::size_t>::max(),
                              cap);
    }
    total *= alphabet_size;
  }
  if (total > cap) throw DimensionCapError(total, cap);
  return total;
}

std::vector<TypeClass> enumerate_types(std::size_t n, std::size_t alphabet_size) {
  sequence_count(n, alphabet_size);
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::size_t> cur(alphabet_size, 0);
  compositions(n, 0, cur, all);
  std::vector<TypeClass> types;
  for (auto& counts : all) {
    TypeClass t;
    t.counts = counts;
    t.dim = multinomial(n, counts);
    for (std::size_t z = 0; z < alphabet_size; ++z) t.representative.insert(t.representative.end(), counts[z], z);
    types.push_back(std::move(t));
  }
  return types;
}

std::vector<Sequence> type_members(const TypeClass& t) {
  std::vector<Sequence> out;
  Sequence s = t.representative;
  do {
    out.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

std::size_t sequence_index(const Sequence& s, std::size_t alphabet_size) {
  std::size_t idx = 0;
  for (std::size_t z : s) idx = idx * alphabet_size + z;
  return idx;
}

Sequence index_sequence(std::size_t index, std::size_t n, std::size_t alphabet_size) {
  Sequence s(n);
  for (std::size_t i = n; i-- > 0;) {
    s[i] = index % alphabet_size;
    index /= alphabet_size;
  }
  return s;
}

Operator type_class_projector(const TypeClass& t, const Matrix& local_basis, const std::string& label) {
  const std::size_t k = t.counts.size();
  const std::size_t n = t.representative.size();
  if (local_basis.rows() != static_cast<Eigen::Index>(k) || local_basis.cols() != static_cast<Eigen::Index>(k)) {
    throw ValidationError("local basis does not match the type alphabet");
  }
  FactorSpace space = power_space(FactorSpace({label}, {k}), n);
  const auto dim = static_cast<Eigen::Index>(space.dim());
  Matrix basis = kron_power(local_basis, n);
  Matrix p = Matrix::Zero(dim, dim);
  for (const auto& s : type_members(t)) {
    auto c = basis.col(static_cast<Eigen::Index>(sequence_index(s, k)));
    p += c * c.adjoint();
  }
  return Operator(space, p);
}

TypicalProjector typical_projector(const DensityOperator& rho, std::size_t n, double delta) {
  if (!(delta >= 0)) throw ValidationError("typicality window must be nonnegative");
  FactorSpace space = power_space(rho.space(), n);
  Eigensystem es = eig_hermitian(rho.matrix());
  const std::size_t k = static_cast<std::size_t>(es.values.size());
  const double h = entropy(rho.matrix());
  const std::size_t total = space.dim();

  TypicalProjector out;
  out.space = space;
  out.delta = delta;
  out.base_entropy = h;
  out.max_retained = 0;
  out.min_retained = std::numeric_limits<double>::infinity();
  RealVector mask = RealVector::Zero(static_cast<Eigen::Index>(total));
  const double lo = -static_cast<double>(n) * (h + delta) - kWindowSlack;
  const double hi = -static_cast<double>(n) * (h - delta) + kWindowSlack;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Sequence s = index_sequence(idx, n, k);
    double log_lambda = 0;
    double lambda = 1;
    bool zero = false;
    for (std::size_t z : s) {
      double l = es.values(static_cast<Eigen::Index>(z));
      if (l <= kZeroEigenvalue) {
        zero = true;
        break;
      }
      log_lambda += std::log2(l);
      lambda *= l;
    }
    if (zero || log_lambda < lo || log_lambda > hi) continue;
    mask(static_cast<Eigen::Index>(idx)) = 1;
    out.trace += lambda;
    out.max_retained = std::max(out.max_retained, lambda);
    out.min_retained = std::min(out.min_retained, lambda);
    ++out.rank;
  }
  if (out.rank == 0) out.min_retained = 0;
  Matrix v = kron_power(es.vectors, n);
  Matrix p = v * mask.asDiagonal() * v.adjoint();
  out.projector = Operator(space, 0.5 * (p + p.adjoint()));
  return out;
}

TypicalProjector marginal_typical_projector(const DensityOperator& rho, const Labels& labels, std::size_t n,
                                            double delta) {
  DensityOperator marginal = partial_trace(rho, labels);
  // Keep the requested factor order.
  if (marginal.space().labels() != labels) marginal = DensityOperator(permute(marginal, labels));
  return typical_projector(marginal, n, delta);
}

double PackingConstants::d() const { return inv_d > 0 ? 1.0 / inv_d : std::numeric_limits<double>::infinity(); }
double PackingConstants::D() const { return inv_D > 0 ? 1.0 / inv_D : std::numeric_limits<double>::infinity(); }

PackingConstants measure_packing_constants(const std::vector<double>& probs, const std::vector<Matrix>& states,
                                           const Matrix& code_projector,
                                           const std::vector<Matrix>& codeword_projectors) {
  if (states.empty()) throw ValidationError("empty ensemble");
  if (probs.size() != states.size() || codeword_projectors.size() != states.size()) {
    throw ValidationError("ensemble, probabilities and projectors differ in size");
  }
  const Matrix& pi = code_projector;
  PackingConstants c;
  double min_trace = std::numeric_limits<double>::infinity();
  double inv_d = std::numeric_limits<double>::infinity();
  Matrix avg = Matrix::Zero(states[0].rows(), states[0].cols());
  for (std::size_t x = 0; x < states.size(); ++x) {
    const Matrix& rho = states[x];
    const Matrix& px = codeword_projectors[x];
    avg += probs[x] * rho;
    min_trace = std::min(min_trace, (pi * rho).trace().real());
    min_trace = std::min(min_trace, (px * rho).trace().real());
    c.commutator_residual = std::max(c.commutator_residual, max_abs(px * rho - rho * px));
    // Smallest eigenvalue of Pi_x rho_x Pi_x restricted to supp Pi_x.
    Eigensystem es = eig_hermitian(px);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
      if (es.values(k) > 0.5) cols.push_back(k);
    }
    if (cols.empty()) continue;
    Matrix b(px.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = es.vectors.col(cols[j]);
    Matrix restricted = b.adjoint() * rho * b;
    Eigen::SelfAdjointEigenSolver<Matrix> rs(0.5 * (restricted + restricted.adjoint()), Eigen::EigenvaluesOnly);
    inv_d = std::min(inv_d, rs.eigenvalues().minCoeff());
  }
  c.epsilon = std::clamp(1.0 - min_trace, 0.0, 1.0);
  c.inv_d = std::isinf(inv_d) ? 0.0 : std::max(0.0, inv_d);
  Matrix sandwiched = pi * avg * pi;
  Eigen::SelfAdjointEigenSolver<Matrix> ss(0.5 * (sandwiched + sandwiched.adjoint()), Eigen::EigenvaluesOnly);
  c.inv_D = std::max(0.0, ss.eigenvalues().maxCoeff());
  return c;
}

PackingConstants measure_packing_constants(const Ensemble& ensemble, const Matrix& code_projector,
                                           const std::vector<Matrix>& codeword_projectors) {
  ensemble.validate();
  std::vector<Matrix> states;
  for (const auto& s : ensemble.states) states.push_back(s.matrix());
  return measure_packing_constants(ensemble.probs, states, code_projector, codeword_projectors);
}

}  // namespace qmac
