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

#include "qmac/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qmac/channels.hpp"
#include "qmac/eacode.hpp"
#include "qmac/gaussian.hpp"
#include "qmac/info.hpp"
#include "qmac/parallel.hpp"
#include "qmac/random.hpp"
#include "qmac/simuldecode.hpp"

namespace qmac {
namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

Matrix projector_of(const Vector& v) { return v * v.adjoint(); }

std::vector<double> random_probs(std::size_t k, Rng& rng, bool uniform) {
  std::vector<double> p(k, 1.0 / static_cast<double>(k));
  if (uniform) return p;
  std::uniform_real_distribution<double> u(0.5, 1.5);
  double s = 0;
  for (auto& x : p) s += (x = u(rng));
  for (auto& x : p) x /= s;
  return p;
}

// One candidate ensemble; constants and bound filled in.
PackingInstance candidate(Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim_dist(2, 8);
  const std::size_t d = dim_dist(rng);
  const auto di = static_cast<Eigen::Index>(d);
  std::uniform_int_distribution<std::size_t> letter_dist(2, std::min<std::size_t>(d, 6));
  const std::size_t k = letter_dist(rng);
  const bool pure = rng() % 2 == 0;
  PackingInstance inst;
  inst.ensemble.probs = random_probs(k, rng, rng() % 4 != 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.0, 0.12);
  for (std::size_t x = 0; x < k; ++x) {
    if (pure) {
      // Perturbed basis vectors.
      Vector v = Vector::Zero(di);
      v(static_cast<Eigen::Index>(x)) = 1;
      for (Eigen::Index i = 0; i < di; ++i) v(i) += 0.06 * Complex(gauss(rng), gauss(rng));
      v.normalize();
      inst.ensemble.states.push_back(projector_of(v));
      inst.ensemble.projectors.push_back(projector_of(v));
    } else {
      // Rank-two state; Pi_x is its top eigenprojector.
      Matrix u = random_unitary(d, rng);
      const double w = weight(rng);
      inst.ensemble.states.push_back((1 - w) * projector_of(u.col(0)) + w * projector_of(u.col(1)));
      inst.ensemble.projectors.push_back(projector_of(u.col(0)));
    }
  }
  Matrix avg = Matrix::Zero(di, di);
  for (std::size_t x = 0; x < k; ++x) avg += inst.ensemble.probs[x] * inst.ensemble.states[x];
  if (rng() % 2 == 0) {
    inst.code_projector = Matrix::Identity(di, di);
  } else {
    inst.code_projector = support_projector(avg, 0.02);
  }
  inst.constants = measure_packing_constants(inst.ensemble.probs, inst.ensemble.states, inst.code_projector,
                                             inst.ensemble.projectors);
  std::size_t best = 0;
  for (std::size_t m = 1; m <= 4; ++m) {
    if (std::pow(static_cast<double>(k), static_cast<double>(m)) > static_cast<double>(kExhaustiveCodebookCap)) break;
    if (packing_lower_bound(inst.constants, m).valid()) best = m;
  }
  if (best == 0) {
    inst.message_count = 1;
  } else {
    inst.message_count = rng() % 4 == 0 ? 1 + rng() % best : best;
  }
  inst.bound = packing_lower_bound(inst.constants, inst.message_count);
  return inst;
}

CheckResult timed(int id, const std::string& name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.id = id;
  r.name = name;
  auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void limit(CheckResult& r, double seconds, std::chrono::steady_clock::time_point start) {
  double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (used > seconds) {
    r.passed = false;
    r.detail += "; runtime " + sci(used) + " s exceeds " + sci(seconds) + " s";
  }
}

PureState bell(const std::string& ref, const std::string& in) { return max_entangled(ref, in, 2); }

// Criterion 1.
void closed_form_agreement(CheckResult& r) {
  auto start = std::chrono::steady_clock::now();
  const std::vector<double> ns = {0.1, 1, 10, 1000};
  std::vector<BosonicMacParams> grid;
  for (int k = 1; k <= 19; ++k) {
    for (double a : ns) {
      for (double b : ns) grid.push_back({0.05 * k, a, b});
    }
  }
  auto diffs = parallel_map<double>(grid.size(), [&](std::size_t i) {
    RateRegion c = ea_bosonic_region(grid[i]);
    RateRegion n = ea_bosonic_region_numeric(grid[i]);
    return std::max({std::abs(c.raw_r1 - n.raw_r1), std::abs(c.raw_r2 - n.raw_r2), std::abs(c.raw_sum - n.raw_sum)});
  });
  double worst = *std::max_element(diffs.begin(), diffs.end());
  r.passed = worst <= 1e-9;
  r.detail = "max |closed - numeric| = " + sci(worst) + " over " + std::to_string(grid.size()) + " grid points";
  limit(r, 5.0, start);
}

// Criterion 2.
void figure_sweeps(CheckResult& r) {
  auto grid = eta_grid(101);
  auto a = region_sweep(1000, 10, grid);
  auto b = region_sweep(10, 10, grid);
  auto count_rows = [](const std::string& csv) {
    return static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
  };
  const std::size_t rows_a = count_rows(sweep_csv(a));
  const std::size_t rows_b = count_rows(sweep_csv(b));
  const double target = 2 * g_entropy(10);
  double worst = 0;
  bool finite = true;
  for (const auto& row : b) worst = std::max(worst, std::abs(row.ea.sum - target));
  for (const auto* rows : {&a, &b}) {
    for (const auto& row : *rows) {
      finite = finite && std::isfinite(row.ea.r1) && std::isfinite(row.ea.r2) && std::isfinite(row.ea.sum);
    }
  }
  r.passed = rows_a == 101 && rows_b == 101 && finite && worst <= 1e-10;
  r.detail = "rows " + std::to_string(rows_a) + "/" + std::to_string(rows_b) + ", max |sum - 2 g(10)| = " + sci(worst);
}

// Criterion 3.
void containment_flags(CheckResult& r) {
  auto start = std::chrono::steady_clock::now();
  bool a = compare_regions({0.5, 10, 8}).ea_contains_ys;
  bool b = compare_regions({0.95, 1, 1}).ea_contains_ys;
  r.passed = a && !b;
  r.detail = std::string("(10, 8, 0.5) contains=") + (a ? "true" : "false") + ", (1, 1, 0.95) contains=" +
             (b ? "true" : "false");
  limit(r, 1.0, start);
}

// Criterion 4.
void sum_gap_positivity(CheckResult& r) {
  Rng rng = make_rng(4, 0);
  std::uniform_real_distribution<double> eta(0.0, 1.0);
  std::uniform_real_distribution<double> logn(-3.0, 3.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10000; ++i) {
    BosonicMacParams p{eta(rng), std::pow(10.0, logn(rng)), std::pow(10.0, logn(rng))};
    if (i % 50 == 0) p.nsb = 0;
    worst = std::min(worst, compare_regions(p).sum_gap);
  }
  r.passed = worst >= -1e-9;
  r.detail = "min sum_gap = " + sci(worst) + " over 10000 triples";
}

// Criterion 5.
void symplectic_hand_check(CheckResult& r) {
  CovarianceState ac = bosonic_output_state({0.5, 1, 1}).select({"A", "C"});
  auto nu = symplectic_eigenvalues(ac);
  const RealMatrix& v = ac.matrix();
  const double det_a = v.block(0, 0, 2, 2).determinant();
  const double det_b = v.block(2, 2, 2, 2).determinant();
  const double det_c = v.block(0, 2, 2, 2).determinant();
  const double delta = det_a + det_b + 2 * det_c;
  const double det = v.determinant();
  // Delta^2 = 4 det here, so the discriminant is rounding noise.
  double disc2 = delta * delta - 4 * det;
  if (std::abs(disc2) <= 1e-9 * delta * delta) disc2 = 0;
  const double disc = std::sqrt(std::max(0.0, disc2));
  const double oracle_p = std::sqrt((delta + disc) / 2);
  const double oracle_m = std::sqrt((delta - disc) / 2);
  const double s5 = std::sqrt(5.0);
  double err = std::max({std::abs(nu[0] - s5), std::abs(nu[1] - s5), std::abs(oracle_p - s5), std::abs(oracle_m - s5)});
  err = std::max({err, std::abs(delta - 10) / 10, std::abs(det - 25) / 25});
  r.passed = nu.size() == 2 && err <= 1e-10;
  r.detail = "Delta = " + format_number(delta) + ", det = " + format_number(det) + ", max deviation from sqrt 5 = " +
             sci(err);
}

// Criteria 6 and 7 share their instances.
const std::vector<PackingInstance>& shared_instances() {
  static const std::vector<PackingInstance> inst = packing_instances(60, 6);
  return inst;
}

void packing_bound(CheckResult& r) {
  auto start = std::chrono::steady_clock::now();
  const auto& inst = shared_instances();
  auto margins = parallel_map<double>(inst.size(), [&](std::size_t i) {
    double exact = expected_success_exhaustive(inst[i].ensemble, inst[i].code_projector, inst[i].message_count);
    return exact - inst[i].bound.value;
  });
  double worst = *std::min_element(margins.begin(), margins.end());
  std::size_t multi = 0;
  for (const auto& x : inst) multi += x.message_count > 1 ? 1 : 0;
  r.passed = inst.size() >= 50 && worst >= -1e-12;
  r.detail = std::to_string(inst.size()) + " ensembles (" + std::to_string(multi) +
             " with M > 1), min(exact - bound) = " + sci(worst);
  limit(r, 60.0, start);
}

void appendix_diagnostics(CheckResult& r) {
  const auto& inst = shared_instances();
  double worst_f0 = std::numeric_limits<double>::infinity();
  double worst_fz = std::numeric_limits<double>::infinity();
  for (const auto& x : inst) {
    auto f = packing_diagnostics(x.ensemble, x.code_projector, 4);
    worst_f0 = std::min(worst_f0, f[0] - (1 - 2 * x.constants.epsilon));
    const double ratio = x.constants.inv_D / x.constants.inv_d;
    for (std::size_t z = 1; z < f.size(); ++z) {
      worst_fz = std::min(worst_fz, std::pow(ratio, static_cast<double>(z)) * f[0] - f[z]);
    }
  }
  r.passed = !inst.empty() && worst_f0 >= -1e-12 && worst_fz >= -1e-12;
  r.detail = "min(f0 - (1 - 2 eps)) = " + sci(worst_f0) + ", min((d/D)^z f0 - f_z) = " + sci(worst_fz);
}

// Criterion 8.
void transpose_trick(CheckResult& r) {
  std::vector<PureState> states = {max_entangled("A", "A'", 2), max_entangled("A", "A'", 3),
                                   schmidt_state("A", "A'", {0.7, 0.3}), schmidt_state("A", "A'", {0.5, 0.3, 0.2})};
  double worst = 0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    TypeDecomposition decomp = type_decompose(states[k], {"A'"}, 2);
    for (std::uint64_t t = 0; t < 25; ++t) {
      worst = std::max(worst, transpose_trick_residual(sample_index(decomp, 8, k * 100 + t), decomp));
      ++count;
    }
  }
  r.passed = worst < 1e-10;
  r.detail = std::to_string(count) + " indices, max residual = " + sci(worst);
}

// Criterion 9.
void hayashi_nagaoka(CheckResult& r) {
  Rng rng = make_rng(9, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  bool all = true;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 5);
    const auto di = static_cast<Eigen::Index>(d);
    Matrix u = random_unitary(d, rng);
    RealVector lam(di);
    for (Eigen::Index j = 0; j < di; ++j) lam(j) = (i % 7 == 0 && j == 0) ? 1.0 : unit(rng);
    Matrix s = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
    Matrix g = random_ginibre(d, 1 + static_cast<std::size_t>(i) % d, rng);
    Matrix t = (i % 11 == 0 ? 0.0 : unit(rng)) * g * g.adjoint() / static_cast<double>(d);
    HnCheck c = hayashi_nagaoka_check(0.5 * (s + s.adjoint()), 0.5 * (t + t.adjoint()));
    all = all && c.holds;
    worst = std::min(worst, c.min_gap);
  }
  r.passed = all;
  r.detail = "200 pairs, min gap eigenvalue = " + sci(worst);
}

struct MacCase {
  std::string name;
  MacInstance inst;
};

std::vector<MacCase> mac_cases() {
  std::vector<MacCase> out;
  out.push_back({"cnot-mac n=1", make_mac_instance(cnot_mac(), bell("A", "A'"), bell("B", "B'"), 1, 0.5)});
  out.push_back({"cnot-mac n=1 uneven",
                 make_mac_instance(cnot_mac(), schmidt_state("A", "A'", {0.8, 0.2}), bell("B", "B'"), 1, 0.5)});
  out.push_back({"adder-mac n=1", make_mac_instance(adder_mac(), bell("A", "A'"), bell("B", "B'"), 1, 0.5)});
  out.push_back({"depolarizing-mac n=1",
                 make_mac_instance(named_channel("depolarizing-mac"), bell("A", "A'"), bell("B", "B'"), 1, 0.5)});
  return out;
}

// Criterion 10.
void randomization_identity(CheckResult& r) {
  auto cases = mac_cases();
  double worst = 0;
  std::size_t codes = 0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const MacInstance& inst = cases[c].inst;
    for (std::size_t L = 1; L <= 4; ++L) {
      for (std::size_t M = 1; M <= 4; ++M) {
        if (c > 0 && (L + M) % 2 == 1) continue;
        MacCodePair pair = sample_code_pair(inst, L, M, 1000 + 10 * L + M, 2000 + 10 * L + M);
        for (int mode = 0; mode < 2; ++mode) {
          PovmSet povm = mode == 0 ? sqrt_measurement(inst.space, build_upsilons(inst, pair))
                                   : successive_mac_povm(inst, pair);
          double avg = average_error(inst, pair, povm);
          double mx = max_error_via_randomization(inst, pair, povm);
          worst = std::max(worst, std::abs(avg - mx));
          ++codes;
        }
      }
    }
  }
  r.passed = worst <= 1e-12;
  r.detail = std::to_string(codes) + " codes, max |max_randomized - average| = " + sci(worst);
}

// Criterion 11.
void super_dense(CheckResult& r) {
  KrausChannel mac = parallel_identity_mac(2);
  RateRegion cc = ea_cc_region(mac, bell("A", "A'"), bell("B", "B'"));
  RateRegion q = ea_q_region(mac, bell("A", "A'"), bell("B", "B'"));
  double err = std::max({std::abs(cc.r1 - 2), std::abs(cc.r2 - 2), std::abs(cc.sum - 4), std::abs(q.r1 - 1),
                         std::abs(q.r2 - 1), std::abs(q.sum - 2)});
  r.passed = err <= 1e-12;
  r.detail = "cc (" + format_number(cc.r1) + ", " + format_number(cc.r2) + ", " + format_number(cc.sum) + "), q (" +
             format_number(q.r1) + ", " + format_number(q.r2) + ", " + format_number(q.sum) + ")";
}

// Criterion 12.
void coherent(CheckResult& r) {
  MacInstance inst = make_mac_instance(cnot_mac(), bell("A", "A'"), bell("B", "B'"), 1, 0.5);
  MacCodePair pair = sample_code_pair(inst, 2, 2, 12, 13);
  PovmSet povm = sqrt_measurement(inst.space, build_upsilons(inst, pair));
  CoherentDecoder dec = coherent_decoder(povm);
  const double eps = average_error(inst, pair, povm);
  Matrix alpha(2, 2), beta(2, 2);
  alpha << 0.6, 0.0, 0.0, 0.8;
  beta << Complex(0.5, 0), Complex(0.5, 0), Complex(0, 0.5), Complex(0.5, 0);
  const double fid = coherent_fidelity(inst, pair, povm, alpha, beta);
  r.passed = dec.isometry_defect <= 1e-9 && fid >= 1 - eps - 1e-12;
  r.detail = "isometry defect = " + sci(dec.isometry_defect) + ", fidelity = " + format_number(fid) +
             ", 1 - eps = " + format_number(1 - eps);
}

// Criterion 13.
void povm_completeness(CheckResult& r) {
  double seq = 0, succ = 0, sq = 0;
  const auto& inst = shared_instances();
  Rng rng = make_rng(13, 0);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& x = inst[i];
    std::discrete_distribution<std::size_t> letters(x.ensemble.probs.begin(), x.ensemble.probs.end());
    std::vector<std::size_t> code(std::max<std::size_t>(x.message_count, 3));
    for (auto& c : code) c = letters(rng);
    FactorSpace space({"X"}, {static_cast<std::size_t>(x.code_projector.rows())});
    seq = std::max(seq, sequential_povm(space, code, x.code_projector, x.ensemble.projectors).sum_max_eigenvalue());
  }
  for (const auto& c : mac_cases()) {
    for (std::size_t L = 1; L <= 3; ++L) {
      MacCodePair pair = sample_code_pair(c.inst, L, 4 - L, 130 + L, 140 + L);
      succ = std::max(succ, successive_mac_povm(c.inst, pair).sum_max_eigenvalue());
      sq = std::max(sq, sqrt_measurement(c.inst.space, build_upsilons(c.inst, pair)).sum_max_eigenvalue());
    }
  }
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 5);
    std::vector<Matrix> family;
    for (int k = 0; k < 3; ++k) {
      Matrix g = random_ginibre(d, 1 + static_cast<std::size_t>(k) % d, rng);
      family.push_back(g * g.adjoint());
    }
    FactorSpace space({"X"}, {d});
    sq = std::max(sq, sqrt_measurement(space, family).sum_max_eigenvalue());
  }
  PovmAudit audit = povm_audit();
  const double worst = std::max({seq, succ, sq, audit.max_sum_eigenvalue});
  r.passed = worst <= 1 + 1e-9 && audit.violations == 0;
  r.detail = "max eigenvalue of sum: sequential " + format_number(seq) + ", successive " + format_number(succ) +
             ", square-root " + format_number(sq) + "; " + std::to_string(audit.count) +
             " POVMs audited, max " + format_number(audit.max_sum_eigenvalue);
}

}  // namespace

std::vector<PackingInstance> packing_instances(std::size_t count, std::uint64_t seed) {
  std::vector<PackingInstance> out;
  Rng rng = make_rng(seed, 0);
  for (std::size_t attempt = 0; attempt < 100 * count && out.size() < count; ++attempt) {
    PackingInstance c = candidate(rng);
    if (c.bound.valid()) out.push_back(std::move(c));
  }
  return out;
}

CheckResult run_criterion(int id) {
  switch (id) {
    case 1: return timed(1, "closed-form-vs-numeric", closed_form_agreement);
    case 2: return timed(2, "figure-sweeps", figure_sweeps);
    case 3: return timed(3, "containment-flags", containment_flags);
    case 4: return timed(4, "sum-gap-positivity", sum_gap_positivity);
    case 5: return timed(5, "symplectic-hand-check", symplectic_hand_check);
    case 6: return timed(6, "packing-bound", packing_bound);
    case 7: return timed(7, "packing-diagnostics", appendix_diagnostics);
    case 8: return timed(8, "transpose-trick", transpose_trick);
    case 9: return timed(9, "hayashi-nagaoka", hayashi_nagaoka);
    case 10: return timed(10, "randomization-identity", randomization_identity);
    case 11: return timed(11, "super-dense-coding", super_dense);
    case 12: return timed(12, "coherent-decoder", coherent);
    case 13: return timed(13, "povm-completeness", povm_completeness);
    default: throw ValidationError("criterion out of range");
  }
}

std::vector<CheckResult> run_all_criteria() {
  std::vector<CheckResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format_result(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": " << r.detail << " ("
     << format_number(std::round(r.seconds * 1000) / 1000) << " s)";
  return os.str();
}

}  // namespace qmac
