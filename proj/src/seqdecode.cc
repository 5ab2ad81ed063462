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

#include "qmac/seqdecode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "qmac/parallel.hpp"
#include "qmac/random.hpp"

namespace qmac {

namespace {

void require_projector(const Matrix& p, const char* what) {
  if (hermitian_defect(p) > 1e-8 || max_abs(p * p - p) > 1e-8) {
    throw ValidationError(std::string(what) + " is not a projector");
  }
}

double lambda_max(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Smallest eigenvalue of P rho P on supp P; +inf when P = 0.
double min_on_support(const Matrix& p, const Matrix& rho) {
  Eigensystem es = eig_hermitian(p);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) > 0.5) cols.push_back(k);
  }
  if (cols.empty()) return std::numeric_limits<double>::infinity();
  Matrix b(p.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = es.vectors.col(cols[j]);
  Matrix r = b.adjoint() * rho * b;
  Eigen::SelfAdjointEigenSolver<Matrix> rs(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
  return rs.eigenvalues().minCoeff();
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && total > cap / base) return cap + 1;
    total *= base;
  }
  return total;
}

double inv(double x) { return x > 0 ? 1.0 / x : std::numeric_limits<double>::infinity(); }

}  // namespace

PovmSet sequential_povm(const FactorSpace& space, const Matrix& code_projector,
                        const std::vector<Matrix>& message_projectors) {
  require_projector(code_projector, "code projector");
  const Matrix& pi = code_projector;
  const Eigen::Index d = pi.rows();
  std::vector<Matrix> elements;
  Matrix g = Matrix::Identity(d, d);  // Qb_{c_{m-1}} ... Qb_{c_1}
  for (const auto& pm : message_projectors) {
    require_projector(pm, "codeword projector");
    Matrix bar = pi * pm * pi;
    Matrix lam = g.adjoint() * bar * g;
    elements.push_back(0.5 * (lam + lam.adjoint()));
    Matrix qbar = pi * (Matrix::Identity(d, d) - pm) * pi;
    g = qbar * g;
  }
  return PovmSet(space, elements);
}

PovmSet sequential_povm(const FactorSpace& space, const std::vector<std::size_t>& code,
                        const Matrix& code_projector, const std::vector<Matrix>& letter_projectors) {
  std::vector<Matrix> per_message;
  for (std::size_t c : code) {
    if (c >= letter_projectors.size()) throw ValidationError("code letter out of range");
    per_message.push_back(letter_projectors[c]);
  }
  return sequential_povm(space, code_projector, per_message);
}

double exact_success_probability(const PovmSet& povm, const std::vector<Matrix>& message_states) {
  if (povm.size() != message_states.size() || povm.size() == 0) {
    throw ValidationError("POVM and message states differ in size");
  }
  double total = 0;
  for (std::size_t m = 0; m < povm.size(); ++m) total += (povm.elements()[m] * message_states[m]).trace().real();
  return total / static_cast<double>(povm.size());
}

double sequential_success(const Matrix& code_projector, const std::vector<const Matrix*>& message_projectors,
                          const std::vector<const Matrix*>& message_states) {
  const Matrix& pi = code_projector;
  const std::size_t count = message_projectors.size();
  double total = 0;
  for (std::size_t m = 0; m < count; ++m) {
    // Tr{Pib_{c_m} G rho_m G^dagger}, G = Qb_{c_{m-1}} ... Qb_{c_1}.
    Matrix state = *message_states[m];
    for (std::size_t j = 0; j < m; ++j) {
      const Matrix& pj = *message_projectors[j];
      Matrix ps = pi * state * pi;
      Matrix qs = ps - pj * ps - ps * pj + pj * ps * pj;
      state = pi * qs * pi;
    }
    const Matrix& pm = *message_projectors[m];
    total += (pm * pi * state * pi).trace().real();
  }
  return total / static_cast<double>(count);
}

double expected_success_exhaustive(const LetterEnsemble& ens, const Matrix& code_projector,
                                   std::size_t message_count) {
  const std::size_t k = ens.probs.size();
  if (k == 0 || ens.states.size() != k || ens.projectors.size() != k) {
    throw ValidationError("letter ensemble is empty or ragged");
  }
  if (message_count == 0) throw ValidationError("need at least one message");
  const std::uint64_t total = checked_power(k, message_count, kExhaustiveCodebookCap);
  if (total > kExhaustiveCodebookCap) throw DimensionCapError(total, kExhaustiveCodebookCap);
  auto values = parallel_map<double>(total, [&](std::size_t ordinal) {
    std::vector<const Matrix*> projs(message_count);
    std::vector<const Matrix*> states(message_count);
    double weight = 1;
    std::size_t rest = ordinal;
    for (std::size_t m = message_count; m-- > 0;) {
      std::size_t c = rest % k;
      rest /= k;
      projs[m] = &ens.projectors[c];
      states[m] = &ens.states[c];
      weight *= ens.probs[c];
    }
    if (weight == 0) return 0.0;
    return weight * sequential_success(code_projector, projs, states);
  });
  double sum = 0;
  for (double v : values) sum += v;
  return sum;
}

MonteCarloEstimate expected_success_monte_carlo(const LetterEnsemble& ens, const Matrix& code_projector,
                                                std::size_t message_count, std::size_t samples,
                                                std::uint64_t seed) {
  if (samples < 2) throw ValidationError("Monte Carlo needs at least two samples");
  auto values = parallel_map<double>(samples, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    std::discrete_distribution<std::size_t> pick(ens.probs.begin(), ens.probs.end());
    std::vector<const Matrix*> projs(message_count);
    std::vector<const Matrix*> states(message_count);
    for (std::size_t m = 0; m < message_count; ++m) {
      std::size_t c = pick(rng);
      projs[m] = &ens.projectors[c];
      states[m] = &ens.states[c];
    }
    return sequential_success(code_projector, projs, states);
  });
  MonteCarloEstimate est;
  est.samples = samples;
  double sum = 0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(samples);
  double ss = 0;
  for (double v : values) ss += (v - est.mean) * (v - est.mean);
  est.stderr_ = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return est;
}

PackingBound packing_lower_bound(double epsilon, double d, double D, std::size_t message_count) {
  PackingBound b;
  double ratio = std::isinf(D) ? 0.0 : d / D;
  b.growth = 2.0 - std::exp(ratio * static_cast<double>(message_count));
  b.positive = b.growth > 0;
  b.eps_ok = epsilon >= 0 && epsilon <= 0.5;
  if (b.valid()) {
    double v = (1 - 2 * epsilon) * b.growth;
    b.value = v * v;
  }
  return b;
}

PackingBound packing_lower_bound(const PackingConstants& c, std::size_t message_count) {
  return packing_lower_bound(c.epsilon, c.d(), c.D(), message_count);
}

std::vector<double> packing_diagnostics(const LetterEnsemble& ens, const Matrix& code_projector,
                                        std::size_t z_max) {
  const Matrix& pi = code_projector;
  Matrix w1 = Matrix::Zero(pi.rows(), pi.cols());
  Matrix w0 = Matrix::Zero(pi.rows(), pi.cols());
  for (std::size_t x = 0; x < ens.probs.size(); ++x) {
    w1 += ens.probs[x] * ens.projectors[x] * ens.states[x] * ens.projectors[x];
    w0 += ens.probs[x] * ens.projectors[x];
  }
  Matrix w0bar = pi * w0 * pi;
  std::vector<double> f;
  Matrix acc = w1 * pi;
  for (std::size_t z = 0; z <= z_max; ++z) {
    f.push_back(acc.trace().real());
    acc = acc * w0bar;
  }
  return f;
}

SequentialReport ea_sequential_protocol(const KrausChannel& channel, const PureState& phi, std::size_t n,
                                        std::size_t message_count, double delta, std::uint64_t seed,
                                        std::size_t trials) {
  if (channel.in_space().size() != 1) throw ValidationError("expected a single-sender channel");
  if (message_count == 0) throw ValidationError("need at least one message");
  const std::string& in = channel.in_space().labels()[0];
  const std::string ref = reference_label(phi, in);
  TypeDecomposition decomp = type_decompose(phi, {in}, n);

  Labels single_order = {ref};
  single_order.insert(single_order.end(), channel.out_space().labels().begin(), channel.out_space().labels().end());
  DensityOperator rho1(permute(apply_channel(channel, phi.density(), {in}), single_order));
  DensityOperator rho_n(tensor_power(rho1, n));
  const FactorSpace& space = rho_n.space();

  Labels out_labels = channel.out_space().labels();
  TypicalProjector pa = marginal_typical_projector(rho1, {ref}, n, delta);
  TypicalProjector pb = marginal_typical_projector(rho1, out_labels, n, delta);
  TypicalProjector pab = typical_projector(rho1, n, delta);
  Matrix pi = embed(tensor(pa.projector, pb.projector), space).matrix();
  const Labels a_labels = decomp.right_labels();

  auto codeword = [&](const HwIndex& s) {
    Matrix v = receiver_encoder(s, decomp);
    return std::pair<Matrix, Matrix>(conjugate(v, rho_n, a_labels).matrix(),
                                     conjugate(v, pab.projector, a_labels).matrix());
  };

  SequentialReport rep;
  rep.n = n;
  rep.message_count = message_count;
  rep.seed = seed;
  rep.delta = delta;

  const std::uint64_t set_size = index_set_size(decomp);
  const std::uint64_t books = checked_power(set_size, message_count, kExhaustiveCodebookCap);
  std::vector<std::pair<Matrix, Matrix>> table;
  if (books <= kExhaustiveCodebookCap) {
    rep.exhaustive = true;
    auto all = all_indices(decomp);
    table = parallel_map<std::pair<Matrix, Matrix>>(all.size(), [&](std::size_t i) { return codeword(all[i]); });
    const double weight = 1.0 / static_cast<double>(books);
    auto values = parallel_map<double>(books, [&](std::size_t ordinal) {
      std::vector<const Matrix*> projs(message_count);
      std::vector<const Matrix*> states(message_count);
      std::size_t rest = ordinal;
      for (std::size_t m = message_count; m-- > 0;) {
        std::size_t c = rest % set_size;
        rest /= set_size;
        states[m] = &table[c].first;
        projs[m] = &table[c].second;
      }
      return weight * sequential_success(pi, projs, states);
    });
    for (double v : values) rep.success_mean += v;
    rep.trials = books;
  } else {
    if (trials < 2) throw ValidationError("Monte Carlo needs at least two trials");
    rep.trials = trials;
    auto values = parallel_map<double>(trials, [&](std::size_t t) {
      std::uint64_t trial_seed = make_rng(seed, t)();
      EaCodeBook book = sample_code(decomp, message_count, trial_seed);
      std::vector<std::pair<Matrix, Matrix>> words;
      for (const auto& s : book.entries) words.push_back(codeword(s));
      std::vector<const Matrix*> projs;
      std::vector<const Matrix*> states;
      for (const auto& w : words) {
        states.push_back(&w.first);
        projs.push_back(&w.second);
      }
      return sequential_success(pi, projs, states);
    });
    double sum = 0;
    for (double v : values) sum += v;
    rep.success_mean = sum / static_cast<double>(trials);
    double ss = 0;
    for (double v : values) ss += (v - rep.success_mean) * (v - rep.success_mean);
    rep.success_stderr = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  }

  // Measured constants. Every codeword is a unitary rotation of rho^{(x)n} that commutes with Pi, so the
  // per-codeword quantities agree across S; the average state is the exact twirl.
  std::vector<std::pair<Matrix, Matrix>> sample = table;
  if (sample.empty()) {
    for (std::size_t i = 0; i < 16; ++i) sample.push_back(codeword(sample_index(decomp, seed, 1000003 + i)));
  }
  std::vector<double> probs(sample.size(), 1.0 / static_cast<double>(sample.size()));
  std::vector<Matrix> states;
  std::vector<Matrix> projs;
  for (const auto& w : sample) {
    states.push_back(w.first);
    projs.push_back(w.second);
  }
  PackingConstants c = measure_packing_constants(probs, states, pi, projs);
  Matrix avg = twirl(rho_n, decomp);
  c.inv_D = std::max(0.0, lambda_max(pi * avg * pi));
  rep.constants = c;
  rep.bound = packing_lower_bound(c, message_count);
  return rep;
}

SuccessiveBound successive_bound(const SuccessiveConstants& c) {
  SuccessiveBound b;
  double ratio = (std::isinf(c.d1_plus) || c.d1_plus <= 0) ? 0.0 : c.d2 / c.d1_plus;
  double growth = 2.0 - std::exp(ratio * static_cast<double>(c.M));
  b.positive = growth > 0;
  if (b.positive) {
    double v = (1 - 2 * c.epsilon) * growth;
    b.packing_term = v * v;
  }
  b.gentle_term = 2.0 * std::sqrt(2.0 * std::max(0.0, c.epsilon + c.eps_prime));
  b.raw = b.packing_term - b.gentle_term;
  b.clamped = std::max(0.0, b.raw);
  return b;
}

double consistent_eps_prime(double d1_minus, std::size_t L, double D1) {
  double ratio = std::isinf(D1) ? 0.0 : d1_minus / D1;
  return std::max(0.0, std::exp(ratio * static_cast<double>(L)) - 1.0);
}

PovmSet successive_povm(const FactorSpace& space, const Matrix& code_projector,
                        const std::vector<Matrix>& first_projectors,
                        const std::vector<std::vector<Matrix>>& pair_projectors) {
  require_projector(code_projector, "code projector");
  const Matrix& pi = code_projector;
  const Eigen::Index d = pi.rows();
  const Matrix id = Matrix::Identity(d, d);
  const std::size_t L = first_projectors.size();
  if (pair_projectors.size() != L) throw ValidationError("pair projectors do not match the first code");
  std::vector<Matrix> elements;
  Matrix chain = pi;  // Qb_{x(l-1)} ... Qb_{x(1)}, or Pi when l = 1
  for (std::size_t l = 0; l < L; ++l) {
    const Matrix& px = first_projectors[l];
    require_projector(px, "first-stage projector");
    Matrix inner = px * chain;
    for (std::size_t m = 0; m < pair_projectors[l].size(); ++m) {
      const Matrix& pxy = pair_projectors[l][m];
      require_projector(pxy, "pair projector");
      Matrix mm = pxy * inner;
      Matrix lam = mm.adjoint() * mm;
      elements.push_back(0.5 * (lam + lam.adjoint()));
      inner = px * (id - pxy) * px * inner;
    }
    chain = pi * (id - px) * pi * chain;
  }
  return PovmSet(space, elements);
}

SuccessiveConstants measure_successive_constants(const std::vector<double>& px, const std::vector<double>& py,
                                                 const std::vector<std::vector<Matrix>>& states,
                                                 const Matrix& code_projector,
                                                 const std::vector<Matrix>& first_projectors,
                                                 const std::vector<std::vector<Matrix>>& pair_projectors,
                                                 std::size_t L, std::size_t M) {
  const std::size_t nx = px.size();
  const std::size_t ny = py.size();
  if (nx == 0 || ny == 0 || states.size() != nx || first_projectors.size() != nx || pair_projectors.size() != nx) {
    throw ValidationError("successive ensemble is empty or ragged");
  }
  const Matrix& pi = code_projector;
  double min_trace = std::numeric_limits<double>::infinity();
  double inv_d1_minus = std::numeric_limits<double>::infinity();
  double inv_d1_plus = 0;
  double inv_d2 = std::numeric_limits<double>::infinity();
  Matrix rho = Matrix::Zero(pi.rows(), pi.cols());
  for (std::size_t x = 0; x < nx; ++x) {
    if (states[x].size() != ny || pair_projectors[x].size() != ny) throw ValidationError("ragged pair ensemble");
    Matrix rho_x = Matrix::Zero(pi.rows(), pi.cols());
    for (std::size_t y = 0; y < ny; ++y) {
      const Matrix& rxy = states[x][y];
      const Matrix& pxy = pair_projectors[x][y];
      rho_x += py[y] * rxy;
      min_trace = std::min({min_trace, (first_projectors[x] * rxy).trace().real(), (pxy * rxy).trace().real()});
      inv_d2 = std::min(inv_d2, min_on_support(pxy, rxy));
    }
    rho += px[x] * rho_x;
    const Matrix& p = first_projectors[x];
    min_trace = std::min({min_trace, (pi * rho_x).trace().real(), (p * rho_x).trace().real()});
    inv_d1_minus = std::min(inv_d1_minus, min_on_support(p, rho_x));
    inv_d1_plus = std::max(inv_d1_plus, lambda_max(p * rho_x * p));
  }
  SuccessiveConstants c;
  c.L = L;
  c.M = M;
  c.epsilon = std::clamp(1.0 - min_trace, 0.0, 1.0);
  c.d1_minus = inv(std::isinf(inv_d1_minus) ? 0.0 : inv_d1_minus);
  c.d1_plus = inv(inv_d1_plus);
  c.d2 = inv(std::isinf(inv_d2) ? 0.0 : inv_d2);
  c.D1 = inv(std::max(0.0, lambda_max(pi * rho * pi)));
  c.eps_prime = consistent_eps_prime(c.d1_minus, L, c.D1);
  return c;
}

SuccessiveExponents unassisted_exponents(double h_b, double h_b_given_x, double h_b_given_xy, std::size_t n,
                                         double delta) {
  const double nn = static_cast<double>(n);
  return {nn * (h_b - delta), nn * (h_b_given_x + delta), nn * (h_b_given_x - delta), nn * (h_b_given_xy + delta)};
}

SuccessiveExponents assisted_exponents(double h_a, double h_b, double h_c, double h_ac, double h_abc,
                                       std::size_t n, double delta) {
  const double nn = static_cast<double>(n);
  return {nn * (h_a + h_b + h_c - delta), nn * (h_b + h_ac + delta), nn * (h_b + h_ac - delta),
          nn * (h_abc + delta)};
}

}  // namespace qmac
