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

#include "qmac/simuldecode.hpp"

#include <algorithm>
#include <cmath>

#include "qmac/channels.hpp"
#include "qmac/parallel.hpp"
#include "qmac/random.hpp"
#include "qmac/seqdecode.hpp"
#include "qmac/typicality.hpp"

namespace qmac {
namespace {

double trace_product(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum().real();
}

Matrix embed_matrix(const Matrix& m, const Labels& labels, const FactorSpace& space) {
  return embed(Operator(space.select(labels), m), space).matrix();
}

Matrix projector_on(const DensityOperator& rho1, const Labels& single, std::size_t n, double delta,
                    const FactorSpace& space) {
  TypicalProjector p = marginal_typical_projector(rho1, single, n, delta);
  return embed(p.projector, space).matrix();
}

void check_square(const Matrix& m, Eigen::Index d, const char* what) {
  if (m.rows() != d || m.cols() != d) throw ValidationError(std::string("shape mismatch: ") + what);
}

std::string fresh_label(const FactorSpace& space, std::string base) {
  while (space.has(base)) base += "'";
  return base;
}

}  // namespace

Matrix MacInstance::alice_encoder(const MacCodePair& pair, std::size_t l) const {
  if (l >= pair.book1.entries.size()) throw ValidationError("message index out of range");
  return embed_matrix(receiver_encoder(pair.book1.entries[l], decomp_a), a_labels, space);
}

Matrix MacInstance::bob_encoder(const MacCodePair& pair, std::size_t m) const {
  if (m >= pair.book2.entries.size()) throw ValidationError("message index out of range");
  return embed_matrix(receiver_encoder(pair.book2.entries[m], decomp_b), b_labels, space);
}

Matrix MacInstance::codeword(const MacCodePair& pair, std::size_t l, std::size_t m) const {
  Matrix v = alice_encoder(pair, l) * bob_encoder(pair, m);
  return v * rho_n.matrix() * v.adjoint();
}

std::vector<Matrix> MacInstance::codewords(const MacCodePair& pair) const {
  const std::size_t L = pair.L();
  const std::size_t M = pair.M();
  std::vector<Matrix> v1(L), v2(M);
  for (std::size_t l = 0; l < L; ++l) v1[l] = alice_encoder(pair, l);
  for (std::size_t m = 0; m < M; ++m) v2[m] = bob_encoder(pair, m);
  return parallel_map<Matrix>(L * M, [&](std::size_t i) {
    Matrix v = v1[i / M] * v2[i % M];
    return Matrix(v * rho_n.matrix() * v.adjoint());
  });
}

MacInstance make_mac_instance(const KrausChannel& mac, const PureState& phi, const PureState& psi,
                              std::size_t n, double delta) {
  if (!is_mac(mac)) throw ValidationError("channel is not a two-sender MAC");
  if (n == 0) throw ValidationError("n must be positive");
  if (!(delta > 0)) throw ValidationError("delta must be positive");
  MacInstance inst;
  inst.mac = mac;
  inst.phi = phi;
  inst.psi = psi;
  inst.n = n;
  inst.delta = delta;
  const std::string& in_a = mac.in_space().labels()[0];
  const std::string& in_b = mac.in_space().labels()[1];
  const std::string ref_a = reference_label(phi, in_a);
  const std::string ref_b = reference_label(psi, in_b);
  if (ref_a == ref_b) throw ValidationError("reference labels of the two shared states collide");
  inst.rho1 = mac_code_state(mac, phi, psi);
  inst.rho_n = DensityOperator(tensor_power(inst.rho1, n));
  inst.space = inst.rho_n.space();
  inst.decomp_a = type_decompose(phi, {in_a}, n);
  inst.decomp_b = type_decompose(psi, {in_b}, n);
  const Labels c1 = mac.out_space().labels();
  inst.a_labels = copy_labels({ref_a}, n);
  inst.b_labels = copy_labels({ref_b}, n);
  inst.c_labels = copy_labels(c1, n);

  Labels ab = {ref_a, ref_b};
  Labels ac = {ref_a};
  ac.insert(ac.end(), c1.begin(), c1.end());
  Labels bc = {ref_b};
  bc.insert(bc.end(), c1.begin(), c1.end());
  Labels abc = ab;
  abc.insert(abc.end(), c1.begin(), c1.end());
  const FactorSpace& sp = inst.space;
  inst.pi_a = projector_on(inst.rho1, {ref_a}, n, delta, sp);
  inst.pi_b = projector_on(inst.rho1, {ref_b}, n, delta, sp);
  inst.pi_c = projector_on(inst.rho1, c1, n, delta, sp);
  inst.pi_ab = projector_on(inst.rho1, ab, n, delta, sp);
  inst.pi_ac = projector_on(inst.rho1, ac, n, delta, sp);
  inst.pi_bc = projector_on(inst.rho1, bc, n, delta, sp);
  inst.pi_abc = projector_on(inst.rho1, abc, n, delta, sp);
  // Factors on disjoint systems commute, so the products are projectors.
  inst.hat1 = inst.pi_a * inst.pi_bc;
  inst.hat2 = inst.pi_b * inst.pi_ac;
  inst.hat3 = inst.pi_c * inst.pi_ab;
  return inst;
}

MacCodePair sample_code_pair(const MacInstance& inst, std::size_t L, std::size_t M, std::uint64_t seed1,
                             std::uint64_t seed2) {
  if (L == 0 || M == 0) throw ValidationError("message counts must be positive");
  return MacCodePair{sample_code(inst.decomp_a, L, seed1), sample_code(inst.decomp_b, M, seed2)};
}

Matrix build_upsilon(const Matrix& v1, const Matrix& v2, const Matrix& hat2, const Matrix& hat3,
                     const Matrix& pi_abc) {
  const Eigen::Index d = pi_abc.rows();
  check_square(pi_abc, d, "Pi_ABC");
  check_square(v1, d, "V1");
  check_square(v2, d, "V2");
  check_square(hat2, d, "hat2");
  check_square(hat3, d, "hat3");
  Matrix x = v1 * hat3 * hat2 * v2 * pi_abc;
  Matrix u = x * x.adjoint();  // pi_abc is a projector
  return 0.5 * (u + u.adjoint());
}

Matrix build_upsilon(const MacInstance& inst, const MacCodePair& pair, std::size_t l, std::size_t m) {
  return build_upsilon(inst.alice_encoder(pair, l), inst.bob_encoder(pair, m), inst.hat2, inst.hat3,
                       inst.pi_abc);
}

std::vector<Matrix> build_upsilons(const MacInstance& inst, const MacCodePair& pair) {
  const std::size_t L = pair.L();
  const std::size_t M = pair.M();
  std::vector<Matrix> x1(L), z2(M);
  for (std::size_t l = 0; l < L; ++l) x1[l] = inst.alice_encoder(pair, l) * inst.hat3 * inst.hat2;
  for (std::size_t m = 0; m < M; ++m) {
    Matrix v = inst.bob_encoder(pair, m);
    z2[m] = v * inst.pi_abc * v.adjoint();
  }
  return parallel_map<Matrix>(L * M, [&](std::size_t i) {
    const Matrix& x = x1[i / M];
    Matrix u = x * z2[i % M] * x.adjoint();
    return Matrix(0.5 * (u + u.adjoint()));
  });
}

PovmSet sqrt_measurement(const FactorSpace& space, const std::vector<Matrix>& upsilons) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (upsilons.empty()) throw ValidationError("sqrt_measurement: no operators");
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& u : upsilons) {
    check_square(u, d, "Upsilon");
    const double scale = std::max(1.0, max_abs(u));
    if (eig_hermitian(u).values(d - 1) < -1e-9 * scale) throw ValidationError("sqrt_measurement: operator is not PSD");
    sum += u;
  }
  Matrix inv_sqrt = operator_power(sum, -0.5, 1e-12);
  Matrix support = support_projector(sum, 1e-12);
  Matrix off = Matrix::Identity(d, d) - support;
  std::vector<Matrix> elements;
  elements.reserve(upsilons.size());
  for (const auto& u : upsilons) {
    if (max_abs(off * u) > 1e-8 * std::max(1.0, max_abs(u))) {
      throw ValidationError("sqrt_measurement: operator leaves the support of the sum");
    }
    Matrix l = inv_sqrt * u * inv_sqrt;
    elements.emplace_back(0.5 * (l + l.adjoint()));
  }
  return PovmSet(space, std::move(elements));
}

std::vector<double> pairwise_errors(const PovmSet& povm, const std::vector<Matrix>& states) {
  if (povm.size() != states.size()) throw ValidationError("average_error: index mismatch");
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out[i] = 1.0 - trace_product(povm.elements()[i], states[i]);
  }
  return out;
}

double average_error(const PovmSet& povm, const std::vector<Matrix>& states) {
  auto e = pairwise_errors(povm, states);
  double s = 0;
  for (double v : e) s += v;
  return s / static_cast<double>(e.size());
}

double average_error(const MacInstance& inst, const MacCodePair& pair, const PovmSet& povm) {
  return average_error(povm, inst.codewords(pair));
}

HnCheck hayashi_nagaoka_check(const Matrix& s, const Matrix& t) {
  const Eigen::Index d = s.rows();
  check_square(s, d, "S");
  check_square(t, d, "T");
  Eigensystem es = eig_hermitian(s);
  if (es.values(d - 1) < -1e-9 || es.values(0) > 1 + 1e-9) throw ValidationError("hayashi_nagaoka: need 0 <= S <= I");
  if (eig_hermitian(t).values(d - 1) < -1e-9) throw ValidationError("hayashi_nagaoka: need T >= 0");
  Matrix sh = 0.5 * (s + s.adjoint());
  Matrix th = 0.5 * (t + t.adjoint());
  Matrix inv_sqrt = operator_power(sh + th, -0.5, 1e-12);
  Matrix id = Matrix::Identity(d, d);
  Matrix gap = 2.0 * (id - sh) + 4.0 * th - (id - inv_sqrt * sh * inv_sqrt);
  HnCheck out;
  out.min_gap = eig_hermitian(0.5 * (gap + gap.adjoint())).values(d - 1);
  out.holds = out.min_gap >= -1e-9;
  return out;
}

MacCodePair randomize_code(const MacCodePair& pair, std::size_t shift1, std::size_t shift2) {
  const std::size_t L = pair.L();
  const std::size_t M = pair.M();
  if (shift1 >= L || shift2 >= M) throw ValidationError("shift out of range");
  MacCodePair out = pair;
  for (std::size_t l = 0; l < L; ++l) out.book1.entries[l] = pair.book1.entries[(l + shift1) % L];
  for (std::size_t m = 0; m < M; ++m) out.book2.entries[m] = pair.book2.entries[(m + shift2) % M];
  return out;
}

double max_error_via_randomization(const MacInstance& inst, const MacCodePair& pair, const PovmSet& povm) {
  const std::size_t L = pair.L();
  const std::size_t M = pair.M();
  if (povm.size() != L * M) throw ValidationError("max_error_via_randomization: index mismatch");
  // errors[shift][l*M+m]: message (l, m) sent with the shifted code, decoded as (l+S, m+T) then unshifted.
  auto per_shift = parallel_map<std::vector<double>>(L * M, [&](std::size_t shift) {
    const std::size_t s = shift / M;
    const std::size_t t = shift % M;
    MacCodePair shifted = randomize_code(pair, s, t);
    std::vector<double> e(L * M);
    for (std::size_t l = 0; l < L; ++l) {
      for (std::size_t m = 0; m < M; ++m) {
        const std::size_t k = ((l + s) % L) * M + (m + t) % M;
        e[l * M + m] = 1.0 - trace_product(povm.elements()[k], inst.codeword(shifted, l, m));
      }
    }
    return e;
  });
  double worst = -1;
  for (std::size_t i = 0; i < L * M; ++i) {
    double avg = 0;
    for (const auto& e : per_shift) avg += e[i];
    worst = std::max(worst, avg / static_cast<double>(L * M));
  }
  return worst;
}

CoherentDecoder coherent_decoder(const PovmSet& povm) {
  const auto d = static_cast<Eigen::Index>(povm.space().dim());
  const std::size_t k = povm.size();
  const auto r = static_cast<Eigen::Index>(k + 1);
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : povm.elements()) sum += e;
  Matrix abort = Matrix::Identity(d, d) - sum;
  if (eig_hermitian(abort).values(d - 1) < -1e-9) throw ValidationError("coherent_decoder: POVM sum exceeds I");
  CoherentDecoder out;
  out.register_dim = k + 1;
  out.isometry = Matrix::Zero(d * r, d);
  for (std::size_t i = 0; i <= k; ++i) {
    Matrix root = operator_power(i < k ? povm.elements()[i] : abort, 0.5, 0.0);
    for (Eigen::Index row = 0; row < d; ++row) {
      out.isometry.row(row * r + static_cast<Eigen::Index>(i)) = root.row(row);
    }
  }
  Matrix defect = out.isometry.adjoint() * out.isometry - Matrix::Identity(d, d);
  out.isometry_defect = max_abs(defect);
  return out;
}

double coherent_fidelity(const MacInstance& inst, const MacCodePair& pair, const PovmSet& povm,
                         const Matrix& alpha, const Matrix& beta) {
  const std::size_t L = pair.L();
  const std::size_t M = pair.M();
  if (povm.size() != L * M) throw ValidationError("coherent_fidelity: index mismatch");
  if (static_cast<std::size_t>(alpha.cols()) != L || static_cast<std::size_t>(beta.cols()) != M) {
    throw ValidationError("coherent_fidelity: amplitude shape mismatch");
  }
  if (std::abs(alpha.squaredNorm() - 1) > 1e-9 || std::abs(beta.squaredNorm() - 1) > 1e-9) {
    throw ValidationError("coherent_fidelity: amplitudes are not normalized");
  }
  coherent_decoder(povm);  // completeness check

  // Single-copy purification U_N (phi (x) psi) on A B C E.
  const KrausChannel& mac = inst.mac;
  const std::string& in_a = mac.in_space().labels()[0];
  const std::string& in_b = mac.in_space().labels()[1];
  const std::string ref_a = reference_label(inst.phi, in_a);
  const std::string ref_b = reference_label(inst.psi, in_b);
  PureState joint = permute(tensor(inst.phi, inst.psi), {ref_a, ref_b, in_a, in_b});
  const auto d_ref = static_cast<Eigen::Index>(joint.space().dim_of(Labels{ref_a, ref_b}));
  const auto d_in = static_cast<Eigen::Index>(mac.in_space().dim());
  const auto d_out = static_cast<Eigen::Index>(mac.out_space().dim());
  const auto d_env = static_cast<Eigen::Index>(mac.kraus().size());
  Vector single = Vector::Zero(d_ref * d_out * d_env);
  for (Eigen::Index ref = 0; ref < d_ref; ++ref) {
    Vector v = joint.vector().segment(ref * d_in, d_in);
    for (Eigen::Index k = 0; k < d_env; ++k) {
      Vector w = mac.kraus()[static_cast<std::size_t>(k)] * v;
      for (Eigen::Index c = 0; c < d_out; ++c) single((ref * d_out + c) * d_env + k) = w(c);
    }
  }
  Labels labels = inst.rho1.space().labels();
  std::vector<std::size_t> dims = inst.rho1.space().dims();
  const std::string env = fresh_label(inst.rho1.space(), "E");
  labels.push_back(env);
  dims.push_back(static_cast<std::size_t>(d_env));
  PureState power = tensor_power(PureState(FactorSpace(labels, dims), single), inst.n);
  Labels order = inst.space.labels();
  for (const auto& e : copy_labels({env}, inst.n)) order.push_back(e);
  PureState varphi = permute(power, order);
  const FactorSpace& full = varphi.space();
  const auto dabc = static_cast<Eigen::Index>(inst.space.dim());
  const Eigen::Index denv = static_cast<Eigen::Index>(full.dim()) / dabc;

  // Overlap <varphi_{p,q}| sqrt(Lambda_{p,q}) |varphi_{p,q}> for every codeword index.
  auto overlaps = parallel_map<double>(L * M, [&](std::size_t i) {
    const std::size_t p = i / M;
    const std::size_t q = i % M;
    Vector v = apply_local(receiver_encoder(pair.book1.entries[p], inst.decomp_a), varphi.vector(), full,
                           inst.a_labels);
    v = apply_local(receiver_encoder(pair.book2.entries[q], inst.decomp_b), v, full, inst.b_labels);
    Matrix x = Eigen::Map<Matrix>(v.data(), denv, dabc).transpose();
    Matrix root = operator_power(povm.elements()[i], 0.5, 0.0);
    return (x.adjoint() * (root * x)).trace().real();
  });

  // The reference registers are orthonormal, so only the diagonal (j, k, l, m) terms survive.
  RealVector pa = alpha.cwiseAbs2().colwise().sum().transpose();
  RealVector pb = beta.cwiseAbs2().colwise().sum().transpose();
  double total = 0;
  for (std::size_t s = 0; s < L; ++s) {
    for (std::size_t t = 0; t < M; ++t) {
      for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t m = 0; m < M; ++m) {
          total += pa(static_cast<Eigen::Index>(l)) * pb(static_cast<Eigen::Index>(m)) *
                   overlaps[((l + s) % L) * M + (m + t) % M];
        }
      }
    }
  }
  return total / static_cast<double>(L * M);
}

ErrorBreakdown error_breakdown(const MacInstance& inst, const MacCodePair& pair,
                               const std::vector<Matrix>& upsilons) {
  const std::size_t L = pair.L();
  const std::size_t M = pair.M();
  if (upsilons.size() != L * M) throw ValidationError("error_breakdown: index mismatch");
  std::vector<Matrix> v1(L), v2(M);
  for (std::size_t l = 0; l < L; ++l) v1[l] = inst.alice_encoder(pair, l);
  for (std::size_t m = 0; m < M; ++m) v2[m] = inst.bob_encoder(pair, m);
  struct Row {
    double direct, cl, cm, clm, kept;
  };
  auto rows = parallel_map<Row>(L * M, [&](std::size_t i) {
    const std::size_t l = i / M;
    const std::size_t m = i % M;
    Matrix enc = v1[l] * inst.rho_n.matrix() * v1[l].adjoint();
    Matrix x = v2[m] * inst.hat1;
    Matrix theta = x * enc * x.adjoint();
    Row r{0, 0, 0, 0, trace_product(inst.hat1, enc)};
    r.direct = 2 * (theta.trace().real() - trace_product(upsilons[i], theta));
    for (std::size_t lp = 0; lp < L; ++lp) {
      for (std::size_t mp = 0; mp < M; ++mp) {
        if (lp == l && mp == m) continue;
        double v = 4 * trace_product(upsilons[lp * M + mp], theta);
        if (mp == m) {
          r.cl += v;
        } else if (lp == l) {
          r.cm += v;
        } else {
          r.clm += v;
        }
      }
    }
    return r;
  });
  ErrorBreakdown out;
  double kept = 0;
  for (const auto& r : rows) {
    out.direct += r.direct;
    out.cross_l += r.cl;
    out.cross_m += r.cm;
    out.cross_lm += r.clm;
    kept += r.kept;
  }
  const double k = static_cast<double>(L * M);
  out.direct /= k;
  out.cross_l /= k;
  out.cross_m /= k;
  out.cross_lm /= k;
  out.gentle = 2 * std::sqrt(std::max(0.0, 1 - kept / k));
  return out;
}

PovmSet successive_mac_povm(const MacInstance& inst, const MacCodePair& pair) {
  const std::size_t L = pair.L();
  const std::size_t M = pair.M();
  Matrix pi = inst.pi_a * inst.pi_b * inst.pi_c;
  std::vector<Matrix> v1(L), z2(M);
  for (std::size_t l = 0; l < L; ++l) v1[l] = inst.alice_encoder(pair, l);
  for (std::size_t m = 0; m < M; ++m) {
    Matrix v = inst.bob_encoder(pair, m);
    z2[m] = v * inst.pi_abc * v.adjoint();
  }
  std::vector<Matrix> first(L);
  std::vector<std::vector<Matrix>> pairs(L, std::vector<Matrix>(M));
  for (std::size_t l = 0; l < L; ++l) {
    first[l] = v1[l] * inst.hat2 * v1[l].adjoint();
    for (std::size_t m = 0; m < M; ++m) pairs[l][m] = v1[l] * z2[m] * v1[l].adjoint();
  }
  return successive_povm(inst.space, pi, first, pairs);
}

MacReport simulate_mac(const MacInstance& inst, std::size_t L, std::size_t M, const std::string& mode,
                       std::uint64_t seed, std::size_t trials) {
  if (mode != "simultaneous" && mode != "successive") throw ValidationError("mode must be simultaneous or successive");
  if (trials == 0) throw ValidationError("trials must be positive");
  if (L == 0 || M == 0) throw ValidationError("message counts must be positive");
  const bool simul = mode == "simultaneous";
  struct Trial {
    double avg, max_rand, sum_max;
    ErrorBreakdown br;
    std::array<std::uint64_t, 2> seeds;
  };
  // Trials run one after another; the per-trial work is already parallel.
  std::vector<Trial> results;
  results.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Trial tr{};
    tr.seeds = {make_rng(seed, 2 * t)(), make_rng(seed, 2 * t + 1)()};
    MacCodePair pair = sample_code_pair(inst, L, M, tr.seeds[0], tr.seeds[1]);
    PovmSet povm;
    if (simul) {
      auto ups = build_upsilons(inst, pair);
      povm = sqrt_measurement(inst.space, ups);
      tr.br = error_breakdown(inst, pair, ups);
    } else {
      povm = successive_mac_povm(inst, pair);
    }
    tr.avg = average_error(inst, pair, povm);
    tr.max_rand = max_error_via_randomization(inst, pair, povm);
    tr.sum_max = povm.sum_max_eigenvalue();
    results.push_back(tr);
  }
  MacReport rep;
  rep.mode = mode;
  rep.n = inst.n;
  rep.L = L;
  rep.M = M;
  rep.delta = inst.delta;
  rep.seed = seed;
  rep.trials = trials;
  const double k = static_cast<double>(trials);
  for (const auto& tr : results) {
    rep.avg_error += tr.avg / k;
    rep.max_error_randomized += tr.max_rand / k;
    rep.povm_sum_max = std::max(rep.povm_sum_max, tr.sum_max);
    rep.breakdown.direct += tr.br.direct / k;
    rep.breakdown.cross_l += tr.br.cross_l / k;
    rep.breakdown.cross_m += tr.br.cross_m / k;
    rep.breakdown.cross_lm += tr.br.cross_lm / k;
    rep.breakdown.gentle += tr.br.gentle / k;
    rep.seeds.push_back(tr.seeds);
    rep.trial_errors.push_back(tr.avg);
  }
  if (trials > 1) {
    double ss = 0;
    for (const auto& tr : results) ss += (tr.avg - rep.avg_error) * (tr.avg - rep.avg_error);
    rep.avg_error_stderr = std::sqrt(ss / (k - 1) / k);
  }
  rep.epsilon_measured = rep.avg_error;
  return rep;
}

}  // namespace qmac
