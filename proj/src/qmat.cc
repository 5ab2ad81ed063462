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

#include "qmac/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

namespace qmac {

namespace {

constexpr std::size_t kDefaultDimCap = 4096;

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ",";
    out += x;
  }
  return out;
}

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

// map[new_index] = old_index for factors reordered so new factor k is old factor pos[k].
std::vector<std::size_t> permutation_map(const std::vector<std::size_t>& dims,
                                         const std::vector<std::size_t>& pos) {
  const std::size_t k = dims.size();
  std::vector<std::size_t> old_stride(k, 1);
  for (std::size_t i = k; i-- > 1;) old_stride[i - 1] = old_stride[i] * dims[i];
  std::vector<std::size_t> new_dims(k);
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    new_dims[i] = dims[pos[i]];
    total *= new_dims[i];
  }
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(k, 0);
  std::size_t old = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    map[idx] = old;
    for (std::size_t i = k; i-- > 0;) {
      ++digit[i];
      old += old_stride[pos[i]];
      if (digit[i] < new_dims[i]) break;
      old -= digit[i] * old_stride[pos[i]];
      digit[i] = 0;
    }
  }
  return map;
}

std::vector<std::size_t> positions(const FactorSpace& space, const std::vector<std::string>& order) {
  if (order.size() != space.size()) {
    throw ValidationError("permutation must name every factor: [" + join(order) + "]");
  }
  std::vector<std::size_t> pos;
  std::set<std::size_t> seen;
  for (const auto& l : order) {
    std::size_t p = space.position(l);
    if (!seen.insert(p).second) throw ValidationError("label repeated in permutation: " + l);
    pos.push_back(p);
  }
  return pos;
}

// (I_rest ⊗ K) X where the row index of X is rest-major, acted-on factors last.
Matrix apply_last(const Matrix& k, const Matrix& x, std::size_t rest) {
  const Eigen::Index din = k.cols();
  const Eigen::Index dout = k.rows();
  const Eigen::Index cols = x.cols();
  Eigen::Map<const Matrix> xm(x.data(), din, static_cast<Eigen::Index>(rest) * cols);
  Matrix y = k * xm;
  return Eigen::Map<Matrix>(y.data(), dout * static_cast<Eigen::Index>(rest), cols);
}

}  // namespace

DimensionCapError::DimensionCapError(std::size_t required, std::size_t available)
    : std::runtime_error("dimension cap exceeded: required " + std::to_string(required) +
                         ", available " + std::to_string(available)),
      required_(required),
      available_(available) {}

std::size_t dimension_cap() {
  const char* env = std::getenv("QMAC_DIM_CAP");
  if (env == nullptr || *env == '\0') return kDefaultDimCap;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return kDefaultDimCap;
  return static_cast<std::size_t>(v);
}

void check_dimension(std::size_t dim) {
  std::size_t cap = dimension_cap();
  if (dim > cap) throw DimensionCapError(dim, cap);
}

FactorSpace::FactorSpace(std::vector<std::string> labels, std::vector<std::size_t> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.size() != dims_.size()) throw ValidationError("labels and dims differ in length");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw ValidationError("empty factor label");
    if (!seen.insert(labels_[i]).second) throw ValidationError("duplicate label: " + labels_[i]);
    if (dims_[i] == 0) throw ValidationError("zero dimension for factor " + labels_[i]);
    dim_ = checked_mul(dim_, dims_[i]);
  }
  check_dimension(dim_);
}

bool FactorSpace::has(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t FactorSpace::position(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ValidationError("unknown label: " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t FactorSpace::dim_of(const std::string& label) const { return dims_[position(label)]; }

std::size_t FactorSpace::dim_of(const std::vector<std::string>& labels) const {
  std::size_t d = 1;
  for (const auto& l : labels) d *= dim_of(l);
  return d;
}

FactorSpace FactorSpace::select(const std::vector<std::string>& labels) const {
  std::vector<std::size_t> dims;
  for (const auto& l : labels) dims.push_back(dim_of(l));
  return FactorSpace(labels, dims);
}

std::vector<std::string> FactorSpace::complement(const std::vector<std::string>& labels) const {
  for (const auto& l : labels) position(l);
  std::vector<std::string> out;
  for (const auto& l : labels_) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) out.push_back(l);
  }
  return out;
}

FactorSpace concat(const FactorSpace& a, const FactorSpace& b) {
  auto labels = a.labels();
  auto dims = a.dims();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::size_t total = checked_mul(a.dim(), b.dim());
  check_dimension(total);
  return FactorSpace(labels, dims);
}

std::string copy_label(const std::string& label, std::size_t k) { return label + "_" + std::to_string(k); }

FactorSpace power_space(const FactorSpace& space, std::size_t n) {
  if (n == 0) throw ValidationError("tensor power needs n >= 1");
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total = checked_mul(total, space.dim());
  check_dimension(total);
  std::vector<std::string> labels;
  std::vector<std::size_t> dims;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      labels.push_back(copy_label(space.labels()[i], k));
      dims.push_back(space.dims()[i]);
    }
  }
  return FactorSpace(labels, dims);
}

std::vector<std::string> copy_labels(const std::vector<std::string>& labels, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& l : labels) out.push_back(copy_label(l, k));
  }
  return out;
}

Operator::Operator(FactorSpace space, Matrix mat) : space_(std::move(space)), mat_(std::move(mat)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (mat_.rows() != d || mat_.cols() != d) {
    throw ValidationError("operator shape " + std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()) +
                          " does not match space dimension " + std::to_string(d));
  }
}

DensityOperator::DensityOperator(FactorSpace space, Matrix mat) : Operator(std::move(space), std::move(mat)) {
  const Matrix& m = matrix();
  if (hermitian_defect(m) > 1e-10) throw ValidationError("density operator is not Hermitian");
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > 1e-10) throw ValidationError("density operator trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) throw ValidationError("density operator is not PSD");
}

DensityOperator::DensityOperator(const Operator& op) : DensityOperator(op.space(), op.matrix()) {}

PureState::PureState(FactorSpace space, Vector vec) : space_(std::move(space)), vec_(std::move(vec)) {
  if (vec_.size() != static_cast<Eigen::Index>(space_.dim())) {
    throw ValidationError("state vector length does not match space dimension");
  }
  if (std::abs(vec_.norm() - 1.0) > 1e-12) throw ValidationError("state vector is not normalized");
}

DensityOperator PureState::density() const {
  Matrix m = vec_ * vec_.adjoint();
  return DensityOperator(space_, m);
}

KrausChannel::KrausChannel(FactorSpace in_space, FactorSpace out_space, std::vector<Matrix> kraus)
    : in_(std::move(in_space)), out_(std::move(out_space)), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ValidationError("channel has no Kraus operators");
  const auto din = static_cast<Eigen::Index>(in_.dim());
  const auto dout = static_cast<Eigen::Index>(out_.dim());
  Matrix sum = Matrix::Zero(din, din);
  for (const auto& k : kraus_) {
    if (k.rows() != dout || k.cols() != din) throw ValidationError("Kraus operator has wrong shape");
    sum += k.adjoint() * k;
  }
  if (max_abs(sum - Matrix::Identity(din, din)) > 1e-10) {
    throw ValidationError("Kraus operators are not trace preserving");
  }
}

KrausChannel KrausChannel::relabeled(std::vector<std::string> in_labels,
                                     std::vector<std::string> out_labels) const {
  return KrausChannel(FactorSpace(std::move(in_labels), in_.dims()), FactorSpace(std::move(out_labels), out_.dims()),
                      kraus_);
}

namespace {

std::mutex& audit_mutex() {
  static std::mutex m;
  return m;
}

PovmAudit& audit_state() {
  static PovmAudit a;
  return a;
}

}  // namespace

PovmSet::PovmSet(FactorSpace space, std::vector<Matrix> elements)
    : space_(std::move(space)), elements_(std::move(elements)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  for (const auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw ValidationError("POVM element has wrong shape");
    if (hermitian_defect(e) > 1e-9) throw ValidationError("POVM element is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9 || es.eigenvalues().maxCoeff() > 1 + 1e-9) {
      throw ValidationError("POVM element eigenvalue outside [0,1]");
    }
  }
  if (elements_.empty()) return;
  const double top = sum_max_eigenvalue();
  {
    std::lock_guard<std::mutex> lock(audit_mutex());
    PovmAudit& a = audit_state();
    ++a.count;
    a.max_sum_eigenvalue = std::max(a.max_sum_eigenvalue, top);
    if (top > 1 + 1e-9) ++a.violations;
  }
  if (top > 1 + 1e-9) throw ValidationError("POVM elements sum above the identity");
}

PovmAudit povm_audit() {
  std::lock_guard<std::mutex> lock(audit_mutex());
  return audit_state();
}

void reset_povm_audit() {
  std::lock_guard<std::mutex> lock(audit_mutex());
  audit_state() = PovmAudit{};
}

double PovmSet::sum_max_eigenvalue() const {
  if (elements_.empty()) return 0.0;
  Matrix sum = Matrix::Zero(elements_[0].rows(), elements_[0].cols());
  for (const auto& e : elements_) sum += e;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sum + sum.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermitian_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

Operator identity(const FactorSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return Operator(space, Matrix::Identity(d, d));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix kron_power(const Matrix& m, std::size_t n) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k) out = kron(out, m);
  return out;
}

Operator tensor(const Operator& a, const Operator& b) {
  FactorSpace space = concat(a.space(), b.space());
  return Operator(space, kron(a.matrix(), b.matrix()));
}

Operator tensor(const std::vector<Operator>& ops) {
  if (ops.empty()) throw ValidationError("tensor of an empty sequence");
  Operator out = ops[0];
  for (std::size_t i = 1; i < ops.size(); ++i) out = tensor(out, ops[i]);
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  FactorSpace space = concat(a.space(), b.space());
  Vector v = kron(a.vector(), b.vector());
  v.normalize();
  return PureState(space, v);
}

Operator tensor_power(const Operator& op, std::size_t n) {
  FactorSpace space = power_space(op.space(), n);
  return Operator(space, kron_power(op.matrix(), n));
}

PureState tensor_power(const PureState& psi, std::size_t n) {
  FactorSpace space = power_space(psi.space(), n);
  Vector v = Vector::Ones(1);
  for (std::size_t k = 0; k < n; ++k) v = kron(v, psi.vector());
  v.normalize();
  return PureState(space, v);
}

Operator permute(const Operator& op, const std::vector<std::string>& order) {
  auto pos = positions(op.space(), order);
  FactorSpace target = op.space().select(order);
  auto map = permutation_map(op.space().dims(), pos);
  const auto d = static_cast<Eigen::Index>(map.size());
  const Matrix& in = op.matrix();
  Matrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto oj = static_cast<Eigen::Index>(map[j]);
    for (Eigen::Index i = 0; i < d; ++i) out(i, j) = in(static_cast<Eigen::Index>(map[i]), oj);
  }
  return Operator(target, out);
}

Vector permute_vector(const Vector& v, const FactorSpace& space, const std::vector<std::string>& order) {
  auto pos = positions(space, order);
  auto map = permutation_map(space.dims(), pos);
  Vector out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(map[i]));
  }
  return out;
}

PureState permute(const PureState& psi, const std::vector<std::string>& order) {
  return PureState(psi.space().select(order), permute_vector(psi.vector(), psi.space(), order));
}

Operator partial_trace(const Operator& op, const std::vector<std::string>& keep) {
  const FactorSpace& space = op.space();
  std::set<std::string> keep_set;
  for (const auto& l : keep) {
    space.position(l);
    if (!keep_set.insert(l).second) throw ValidationError("label repeated in keep set: " + l);
  }
  std::vector<std::string> kept;
  std::vector<std::string> traced;
  for (const auto& l : space.labels()) (keep_set.count(l) ? kept : traced).push_back(l);
  std::vector<std::string> order = kept;
  order.insert(order.end(), traced.begin(), traced.end());
  Operator p = permute(op, order);
  const auto dk = static_cast<Eigen::Index>(space.dim_of(kept));
  const auto dt = static_cast<Eigen::Index>(space.dim_of(traced));
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index t = 0; t < dt; ++t) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      for (Eigen::Index i = 0; i < dk; ++i) out(i, j) += p.matrix()(i * dt + t, j * dt + t);
    }
  }
  return Operator(space.select(kept), out);
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep) {
  Operator r = partial_trace(static_cast<const Operator&>(rho), keep);
  Matrix m = 0.5 * (r.matrix() + r.matrix().adjoint());
  return DensityOperator(r.space(), m);
}

Operator embed(const Operator& op, const FactorSpace& target) {
  for (std::size_t i = 0; i < op.space().size(); ++i) {
    if (target.dim_of(op.space().labels()[i]) != op.space().dims()[i]) {
      throw ValidationError("embed: dimension mismatch on " + op.space().labels()[i]);
    }
  }
  auto rest = target.complement(op.space().labels());
  Operator full = op;
  if (!rest.empty()) full = tensor(op, identity(target.select(rest)));
  return permute(full, target.labels());
}

Eigensystem eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("eig_hermitian: matrix is not square");
  const double scale = std::max(1.0, max_abs(m));
  if (hermitian_defect(m) > 1e-8 * scale) throw ValidationError("eig_hermitian: matrix is not Hermitian");
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  const Eigen::Index d = h.rows();
  const RealVector& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();

  // Leading basis index of each eigenvector, for ordering within a degenerate group.
  std::vector<Eigen::Index> lead(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    double best = -1;
    for (Eigen::Index i = 0; i < d; ++i) {
      double a = std::abs(vecs(i, k));
      if (a > best + 1e-12) {
        best = a;
        lead[k] = i;
      }
    }
  }
  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return vals(a) > vals(b); });
  // Degenerate runs: ascending leading basis index.
  const double tie = 1e-12 * scale;
  for (Eigen::Index s = 0; s < d;) {
    Eigen::Index e = s + 1;
    while (e < d && vals(order[s]) - vals(order[e]) <= tie) ++e;
    std::stable_sort(order.begin() + s, order.begin() + e,
                     [&](Eigen::Index a, Eigen::Index b) { return lead[a] < lead[b]; });
    s = e;
  }

  Eigensystem out{RealVector(d), Matrix(d, d)};
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values(k) = vals(order[k]);
    Vector v = vecs.col(order[k]);
    Complex pivot = v(lead[order[k]]);
    if (std::abs(pivot) > 0) v *= std::conj(pivot) / std::abs(pivot);
    out.vectors.col(k) = v;
  }
  return out;
}

Matrix operator_power(const Matrix& m, double exponent, double support_cutoff) {
  Eigensystem es = eig_hermitian(m);
  const Eigen::Index d = m.rows();
  RealVector f(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    double l = es.values(k);
    if (l < -1e-9) throw ValidationError("operator_power: operator is not PSD");
    f(k) = l > support_cutoff ? std::pow(l, exponent) : 0.0;
  }
  return es.vectors * f.asDiagonal() * es.vectors.adjoint();
}

Matrix support_projector(const Matrix& m, double cutoff) {
  Eigensystem es = eig_hermitian(m);
  const Eigen::Index d = m.rows();
  Matrix p = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (es.values(k) > cutoff) p += es.vectors.col(k) * es.vectors.col(k).adjoint();
  }
  return p;
}

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& state,
                              const std::vector<std::string>& acting_on) {
  const FactorSpace& space = state.space();
  const FactorSpace& in = ch.in_space();
  if (acting_on.size() != in.size()) {
    throw ValidationError("apply_channel: expected " + std::to_string(in.size()) + " input labels, got [" +
                          join(acting_on) + "]");
  }
  for (std::size_t i = 0; i < acting_on.size(); ++i) {
    if (!space.has(acting_on[i])) throw ValidationError("apply_channel: unknown label " + acting_on[i]);
    if (space.dim_of(acting_on[i]) != in.dims()[i]) {
      throw ValidationError("apply_channel: dimension mismatch on " + acting_on[i]);
    }
  }
  auto rest = space.complement(acting_on);
  for (const auto& l : ch.out_space().labels()) {
    if (std::find(rest.begin(), rest.end(), l) != rest.end()) {
      throw ValidationError("apply_channel: output label collides with " + l);
    }
  }
  std::vector<std::string> order = rest;
  order.insert(order.end(), acting_on.begin(), acting_on.end());
  Operator p = permute(state, order);
  const std::size_t dr = space.dim_of(rest);
  const auto dout = static_cast<Eigen::Index>(ch.out_space().dim() * dr);
  Matrix out = Matrix::Zero(dout, dout);
  for (const auto& k : ch.kraus()) {
    Matrix y = apply_last(k, p.matrix(), dr);
    out += apply_last(k, y.adjoint(), dr).adjoint();
  }
  out = 0.5 * (out + out.adjoint());
  FactorSpace out_space = concat(space.select(rest), ch.out_space());
  return DensityOperator(out_space, out);
}

Operator conjugate(const Matrix& u, const Operator& op, const std::vector<std::string>& labels) {
  const FactorSpace& space = op.space();
  if (static_cast<std::size_t>(u.rows()) != space.dim_of(labels) || u.rows() != u.cols()) {
    throw ValidationError("conjugate: operator shape does not match labels");
  }
  auto rest = space.complement(labels);
  std::vector<std::string> order = rest;
  order.insert(order.end(), labels.begin(), labels.end());
  Operator p = permute(op, order);
  const std::size_t dr = space.dim_of(rest);
  Matrix y = apply_last(u, p.matrix(), dr);
  Matrix out = apply_last(u, y.adjoint(), dr).adjoint();
  return permute(Operator(p.space(), out), space.labels());
}

DensityOperator conjugate(const Matrix& u, const DensityOperator& rho, const std::vector<std::string>& labels) {
  Operator r = conjugate(u, static_cast<const Operator&>(rho), labels);
  Matrix m = 0.5 * (r.matrix() + r.matrix().adjoint());
  return DensityOperator(r.space(), m);
}

Vector apply_local(const Matrix& u, const Vector& v, const FactorSpace& space,
                   const std::vector<std::string>& labels) {
  if (static_cast<std::size_t>(u.cols()) != space.dim_of(labels) || u.rows() != u.cols()) {
    throw ValidationError("apply_local: operator shape does not match labels");
  }
  auto rest = space.complement(labels);
  std::vector<std::string> order = rest;
  order.insert(order.end(), labels.begin(), labels.end());
  Vector p = permute_vector(v, space, order);
  Matrix col = p;
  Matrix y = apply_last(u, col, space.dim_of(rest));
  return permute_vector(y.col(0), space.select(order), space.labels());
}

PureState apply_local(const Matrix& u, const PureState& psi, const std::vector<std::string>& labels) {
  Vector v = apply_local(u, psi.vector(), psi.space(), labels);
  v.normalize();
  return PureState(psi.space(), v);
}

Matrix weyl_shift(std::size_t d, std::size_t x) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>((j + x) % d), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

Matrix weyl_clock(std::size_t d, std::size_t z) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < d; ++j) {
    // Reduce j*z mod d first so the phase argument stays exact.
    double angle = 2.0 * M_PI * static_cast<double>((j * z) % d) / static_cast<double>(d);
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = std::polar(1.0, angle);
  }
  return m;
}

}  // namespace qmac
