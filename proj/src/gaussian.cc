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

#include "qmac/gaussian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qmac/parallel.hpp"
#include "qmac/qmat.hpp"

namespace qmac {
namespace {

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

double max_abs_real(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

RealMatrix select_block(const RealMatrix& v, const std::vector<std::size_t>& pos) {
  const auto k = static_cast<Eigen::Index>(pos.size());
  RealMatrix out(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto pi = static_cast<Eigen::Index>(pos[static_cast<std::size_t>(i)]);
      const auto pj = static_cast<Eigen::Index>(pos[static_cast<std::size_t>(j)]);
      out.block(2 * i, 2 * j, 2, 2) = v.block(2 * pi, 2 * pj, 2, 2);
    }
  }
  return out;
}

}  // namespace

double g_entropy(double n) {
  if (!(n >= -1e-12)) throw ValidationError("g: mean photon number out of range");
  if (n <= 0) return 0.0;
  return xlog2x(n + 1) - xlog2x(n);
}

RealMatrix symplectic_form(std::size_t modes) {
  const auto k = static_cast<Eigen::Index>(modes);
  RealMatrix j = RealMatrix::Zero(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    j(2 * i, 2 * i + 1) = 1;
    j(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

CovarianceState::CovarianceState(std::vector<std::string> modes, RealMatrix v)
    : modes_(std::move(modes)), v_(std::move(v)) {
  const auto k = static_cast<Eigen::Index>(modes_.size());
  if (v_.rows() != 2 * k || v_.cols() != 2 * k) throw ValidationError("covariance matrix shape mismatch");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    for (std::size_t j = i + 1; j < modes_.size(); ++j) {
      if (modes_[i] == modes_[j]) throw ValidationError("duplicate mode " + modes_[i]);
    }
  }
  const double scale = std::max(1.0, max_abs_real(v_));
  if (max_abs_real(v_ - v_.transpose()) > 1e-10 * scale) throw ValidationError("covariance matrix is not symmetric");
  Matrix h = v_.cast<Complex>() + Complex(0, 1) * symplectic_form(modes_.size()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (k > 0 && es.eigenvalues()(0) < -1e-8 * scale) throw ValidationError("covariance matrix is not physical");
}

std::size_t CovarianceState::position(const std::string& mode) const {
  auto it = std::find(modes_.begin(), modes_.end(), mode);
  if (it == modes_.end()) throw ValidationError("unknown mode " + mode);
  return static_cast<std::size_t>(it - modes_.begin());
}

CovarianceState CovarianceState::select(const std::vector<std::string>& modes) const {
  std::vector<std::size_t> pos;
  for (const auto& m : modes) pos.push_back(position(m));
  return CovarianceState(modes, select_block(v_, pos));
}

CovarianceState CovarianceState::renamed(const std::vector<std::string>& modes) const {
  if (modes.size() != modes_.size()) throw ValidationError("rename: mode count mismatch");
  return CovarianceState(modes, v_);
}

CovarianceState direct_sum(const CovarianceState& a, const CovarianceState& b) {
  const Eigen::Index na = a.matrix().rows();
  const Eigen::Index nb = b.matrix().rows();
  RealMatrix v = RealMatrix::Zero(na + nb, na + nb);
  v.topLeftCorner(na, na) = a.matrix();
  v.bottomRightCorner(nb, nb) = b.matrix();
  std::vector<std::string> modes = a.modes();
  modes.insert(modes.end(), b.modes().begin(), b.modes().end());
  return CovarianceState(modes, v);
}

CovarianceState thermal_state(const std::string& mode, double n) {
  if (!(n >= 0)) throw ValidationError("mean photon number out of range");
  return CovarianceState({mode}, (2 * n + 1) * RealMatrix::Identity(2, 2));
}

SymplecticMap::SymplecticMap(RealMatrix s) : s_(std::move(s)) {
  if (s_.rows() != s_.cols() || s_.rows() % 2 != 0) throw ValidationError("symplectic map shape mismatch");
  RealMatrix j = symplectic_form(static_cast<std::size_t>(s_.rows()) / 2);
  if (max_abs_real(s_ * j * s_.transpose() - j) > 1e-10) throw ValidationError("map is not symplectic");
}

CovarianceState tms_covariance(double ns, const std::string& first, const std::string& second) {
  if (!(ns >= 0)) throw ValidationError("N_S out of range");
  const double a = 2 * ns + 1;
  const double c = 2 * std::sqrt(ns * (ns + 1));
  RealMatrix v(4, 4);
  v << a, 0, c, 0,
       0, a, 0, -c,
       c, 0, a, 0,
       0, -c, 0, a;
  return CovarianceState({first, second}, v);
}

SymplecticMap beamsplitter_symplectic(double eta) {
  if (!(eta >= 0 && eta <= 1)) throw ValidationError("eta out of range");
  const double t = std::sqrt(eta);
  const double r = std::sqrt(1 - eta);
  RealMatrix s(4, 4);
  s << t, 0, r, 0,
       0, t, 0, r,
       -r, 0, t, 0,
       0, -r, 0, t;
  return SymplecticMap(s);
}

CovarianceState apply_symplectic(const SymplecticMap& s, const CovarianceState& v,
                                 const std::vector<std::string>& modes) {
  if (modes.size() != s.mode_count()) throw ValidationError("apply_symplectic: mode count mismatch");
  const auto n = static_cast<Eigen::Index>(v.mode_count());
  RealMatrix full = RealMatrix::Identity(2 * n, 2 * n);
  std::vector<Eigen::Index> pos;
  for (const auto& m : modes) pos.push_back(static_cast<Eigen::Index>(v.position(m)));
  const auto k = static_cast<Eigen::Index>(pos.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      full.block(2 * pos[static_cast<std::size_t>(i)], 2 * pos[static_cast<std::size_t>(j)], 2, 2) =
          s.matrix().block(2 * i, 2 * j, 2, 2);
    }
  }
  RealMatrix out = full * v.matrix() * full.transpose();
  return CovarianceState(v.modes(), 0.5 * (out + out.transpose()));
}

std::vector<double> symplectic_eigenvalues(const CovarianceState& v) {
  const std::size_t n = v.mode_count();
  if (n == 0) return {};
  // V^{1/2} (iJ) V^{1/2} is Hermitian and similar to iJV.
  Eigen::SelfAdjointEigenSolver<RealMatrix> ev(v.matrix());
  if (ev.eigenvalues().minCoeff() <= 0) throw ValidationError("covariance matrix is not positive definite");
  RealMatrix root = ev.operatorSqrt();
  Matrix ij = Complex(0, 1) * symplectic_form(n).cast<Complex>();
  Matrix h = root.cast<Complex>() * ij * root.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> spec;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) spec.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(spec.begin(), spec.end(), std::greater<>());
  std::vector<double> out;
  for (std::size_t i = 0; i < 2 * n; i += 2) {
    if (std::abs(spec[i] - spec[i + 1]) > 1e-7 * std::max(1.0, spec[i])) {
      throw ValidationError("symplectic spectrum is not paired");
    }
    out.push_back(0.5 * (spec[i] + spec[i + 1]));
  }
  return out;
}

double gaussian_entropy(const CovarianceState& v) {
  double h = 0;
  for (double nu : symplectic_eigenvalues(v)) {
    if (nu < 1 - 1e-8) throw ValidationError("symplectic eigenvalue below 1");
    h += g_entropy(std::max(0.0, (nu + 1) / 2 - 1));
  }
  return h;
}

void BosonicMacParams::validate() const {
  if (!(eta >= 0 && eta <= 1)) throw ValidationError("eta out of range");
  if (!(nsa >= 0) || !std::isfinite(nsa)) throw ValidationError("nsa out of range");
  if (!(nsb >= 0) || !std::isfinite(nsb)) throw ValidationError("nsb out of range");
}

namespace {

std::array<double, 2> lambda_pair(double w, double na, double nb) {
  const double diff = std::abs(na - nb);
  const double root = std::sqrt(w * w * diff * diff + 2 * w * (2 * na * nb + na + nb) + 1);
  return {w * diff + root, w * diff - root};
}

double thermal_term(double lambda) { return g_entropy(std::max(0.0, (std::abs(lambda) + 1) / 2 - 1)); }

}  // namespace

std::array<double, 2> lambda_ac(const BosonicMacParams& p) { return lambda_pair(1 - p.eta, p.nsa, p.nsb); }
std::array<double, 2> lambda_bc(const BosonicMacParams& p) { return lambda_pair(p.eta, p.nsa, p.nsb); }

RateRegion ea_bosonic_region(const BosonicMacParams& p) {
  p.validate();
  const auto ac = lambda_ac(p);
  const auto bc = lambda_bc(p);
  const double he = g_entropy(p.eta * p.nsb + (1 - p.eta) * p.nsa);
  const double ga = g_entropy(p.nsa);
  const double gb = g_entropy(p.nsb);
  return make_region(ga + thermal_term(bc[0]) + thermal_term(bc[1]) - he,
                     gb + thermal_term(ac[0]) + thermal_term(ac[1]) - he,
                     ga + gb + g_entropy(p.eta * p.nsa + (1 - p.eta) * p.nsb) - he);
}

CovarianceState bosonic_output_state(const BosonicMacParams& p) {
  p.validate();
  CovarianceState in = direct_sum(tms_covariance(p.nsa, "A", "A'"), tms_covariance(p.nsb, "B", "B'"));
  CovarianceState out = apply_symplectic(beamsplitter_symplectic(p.eta), in, {"A'", "B'"});
  // A' and B' leave the beamsplitter as C and E.
  return out.renamed({"A", "C", "B", "E"});
}

BosonicEntropies bosonic_entropies(const BosonicMacParams& p) {
  CovarianceState v = bosonic_output_state(p);
  auto h = [&](const std::vector<std::string>& m) { return gaussian_entropy(v.select(m)); };
  BosonicEntropies e;
  e.a = h({"A"});
  e.b = h({"B"});
  e.c = h({"C"});
  e.ab = h({"A", "B"});
  e.ac = h({"A", "C"});
  e.bc = h({"B", "C"});
  e.abc = h({"A", "B", "C"});
  e.e = h({"E"});
  e.be = h({"B", "E"});
  e.ae = h({"A", "E"});
  return e;
}

RateRegion ea_bosonic_region_numeric(const BosonicMacParams& p) {
  BosonicEntropies e = bosonic_entropies(p);
  // ABCE is pure, so H(ABC) = H(E). The three-mode matrix has two unit symplectic
  // eigenvalues that rounding pushes off 1 at large photon numbers.
  return make_region(e.a + e.bc - e.e, e.b + e.ac - e.e, e.ab + e.c - e.e);
}

RateRegion yen_shapiro_bound(const BosonicMacParams& p) {
  p.validate();
  return make_region(g_entropy(p.nsa), g_entropy(p.nsb), g_entropy(p.eta * p.nsa + (1 - p.eta) * p.nsb));
}

RegionComparison compare_regions(const BosonicMacParams& p) {
  RegionComparison out;
  out.ea = ea_bosonic_region(p);
  out.ys = yen_shapiro_bound(p);
  out.sum_gap = g_entropy(p.nsa) + g_entropy(p.nsb) - g_entropy(p.eta * p.nsb + (1 - p.eta) * p.nsa);
  out.ea_contains_ys = true;
  for (const auto& v : out.ys.vertices) {
    VertexCheck c{v[0], v[1], out.ea.contains(v[0], v[1])};
    out.ea_contains_ys = out.ea_contains_ys && c.inside;
    out.vertices.push_back(c);
  }
  return out;
}

std::vector<double> eta_grid(std::size_t steps) {
  if (steps < 2) throw ValidationError("steps must be at least 2");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) out[i] = static_cast<double>(i) / static_cast<double>(steps - 1);
  return out;
}

std::vector<SweepRow> region_sweep(double nsa, double nsb, const std::vector<double>& etas) {
  for (double e : etas) BosonicMacParams{e, nsa, nsb}.validate();
  return parallel_map<SweepRow>(etas.size(), [&](std::size_t i) {
    BosonicMacParams p{etas[i], nsa, nsb};
    RegionComparison c = compare_regions(p);
    return SweepRow{etas[i], c.ea, c.ys, c.sum_gap};
  });
}

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "eta,r1,r2,sum,ys_r1,ys_r2,ys_sum,sum_gap\n";
  for (const auto& r : rows) {
    os << format_number(r.eta) << ',' << format_number(r.ea.r1) << ',' << format_number(r.ea.r2) << ','
       << format_number(r.ea.sum) << ',' << format_number(r.ys.r1) << ',' << format_number(r.ys.r2) << ','
       << format_number(r.ys.sum) << ',' << format_number(r.sum_gap) << '\n';
  }
  return os.str();
}

}  // namespace qmac
