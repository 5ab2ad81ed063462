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

#include "qmac/eacode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "qmac/random.hpp"

namespace qmac {

namespace {

Matrix sequence_projector(const TypeDecomposition& decomp, std::size_t t) {
  const std::size_t dim = sequence_count(decomp.n, decomp.local_dim);
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& s : type_members(decomp.types[t])) {
    auto i = static_cast<Eigen::Index>(sequence_index(s, decomp.local_dim));
    p(i, i) = 1;
  }
  return p;
}

}  // namespace

std::size_t SchmidtDecomposition::rank(double cutoff) const {
  std::size_t r = 0;
  for (Eigen::Index z = 0; z < coefficients.size(); ++z) r += coefficients(z) > cutoff ? 1 : 0;
  return r;
}

Vector SchmidtDecomposition::reconstruct() const {
  Vector v = Vector::Zero(left_basis.rows() * right_basis.rows());
  for (Eigen::Index z = 0; z < coefficients.size(); ++z) {
    v += coefficients(z) * kron(Vector(left_basis.col(z)), Vector(right_basis.col(z)));
  }
  return v;
}

SchmidtDecomposition schmidt(const PureState& phi, const Labels& cut) {
  const FactorSpace& space = phi.space();
  Labels right = space.complement(cut);
  if (cut.empty() || right.empty()) throw ValidationError("Schmidt cut must leave both sides nonempty");
  Labels order = cut;
  order.insert(order.end(), right.begin(), right.end());
  Vector v = permute_vector(phi.vector(), space, order);
  const auto dl = static_cast<Eigen::Index>(space.dim_of(cut));
  const auto dr = static_cast<Eigen::Index>(space.dim_of(right));
  Matrix m(dl, dr);
  for (Eigen::Index i = 0; i < dl; ++i) {
    for (Eigen::Index j = 0; j < dr; ++j) m(i, j) = v(i * dr + j);
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtDecomposition out;
  out.left_labels = cut;
  out.right_labels = right;
  out.coefficients = svd.singularValues();
  out.left_basis = svd.matrixU();
  out.right_basis = svd.matrixV().conjugate();
  return out;
}

Labels TypeDecomposition::left_labels() const { return copy_labels(schmidt.left_labels, n); }
Labels TypeDecomposition::right_labels() const { return copy_labels(schmidt.right_labels, n); }

Vector TypeDecomposition::reassemble() const {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t t = 0; t < types.size(); ++t) v += std::sqrt(probs[t]) * blocks[t].vector();
  return v;
}

TypeDecomposition type_decompose(const PureState& phi, const Labels& cut, std::size_t n) {
  TypeDecomposition out;
  out.schmidt = schmidt(phi, cut);
  const auto& sd = out.schmidt;
  const std::size_t dl = static_cast<std::size_t>(sd.left_basis.rows());
  const std::size_t dr = static_cast<std::size_t>(sd.right_basis.rows());
  if (dl != dr) throw ValidationError("type decomposition needs equal local dimensions on both sides");
  out.n = n;
  out.local_dim = dl;
  // Single-copy layout left-then-right, so the power space is copy-major A'_1 A_1 A'_2 A_2 ...
  Labels single = sd.left_labels;
  single.insert(single.end(), sd.right_labels.begin(), sd.right_labels.end());
  out.space = power_space(phi.space().select(single), n);
  check_dimension(out.space.dim());

  const std::size_t r = sd.rank();
  std::vector<double> lambda(r);
  for (std::size_t z = 0; z < r; ++z) {
    double c = sd.coefficients(static_cast<Eigen::Index>(z));
    lambda[z] = c * c;
  }
  std::vector<Vector> pair(r);
  for (std::size_t z = 0; z < r; ++z) {
    pair[z] = kron(Vector(sd.left_basis.col(static_cast<Eigen::Index>(z))),
                   Vector(sd.right_basis.col(static_cast<Eigen::Index>(z))));
  }
  for (const auto& t : enumerate_types(n, r)) {
    double p = static_cast<double>(t.dim);
    for (std::size_t z = 0; z < r; ++z) p *= std::pow(lambda[z], static_cast<double>(t.counts[z]));
    Vector block = Vector::Zero(static_cast<Eigen::Index>(out.space.dim()));
    for (const auto& s : type_members(t)) {
      Vector term = Vector::Ones(1);
      for (std::size_t z : s) term = kron(term, pair[z]);
      block += term;
    }
    block /= std::sqrt(static_cast<double>(t.dim));
    out.types.push_back(t);
    out.probs.push_back(p);
    out.blocks.emplace_back(out.space, block);
  }
  return out;
}

std::uint64_t index_set_size(const TypeDecomposition& decomp) {
  std::uint64_t total = 1;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  for (const auto& t : decomp.types) {
    std::uint64_t factor = 2 * static_cast<std::uint64_t>(t.dim) * static_cast<std::uint64_t>(t.dim);
    if (total > max / factor) return max;
    total *= factor;
  }
  return total;
}

HwIndex index_from_ordinal(const TypeDecomposition& decomp, std::uint64_t ordinal) {
  HwIndex s;
  for (std::size_t t = decomp.types.size(); t-- > 0;) {
    const std::uint64_t d = decomp.types[t].dim;
    std::size_t b = ordinal % 2;
    ordinal /= 2;
    std::size_t z = ordinal % d;
    ordinal /= d;
    std::size_t x = ordinal % d;
    ordinal /= d;
    s.entries.push_back({x, z, b});
  }
  std::reverse(s.entries.begin(), s.entries.end());
  return s;
}

std::vector<HwIndex> all_indices(const TypeDecomposition& decomp) {
  const std::uint64_t size = index_set_size(decomp);
  if (size > dimension_cap() * 64ULL) throw DimensionCapError(size, dimension_cap() * 64ULL);
  std::vector<HwIndex> out;
  out.reserve(size);
  for (std::uint64_t k = 0; k < size; ++k) out.push_back(index_from_ordinal(decomp, k));
  return out;
}

Matrix hw_block(std::size_t d, std::size_t x, std::size_t z, std::size_t b) {
  if (x >= d || z >= d || b > 1) throw ValidationError("Heisenberg-Weyl index out of range");
  Matrix m = weyl_shift(d, x) * weyl_clock(d, z);
  return b ? Matrix(-m) : m;
}

Matrix hw_unitary(const HwIndex& s, const TypeDecomposition& decomp) {
  if (s.entries.size() != decomp.types.size()) throw ValidationError("index does not match the type decomposition");
  const std::size_t dim = sequence_count(decomp.n, decomp.local_dim);
  Matrix u = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t t = 0; t < decomp.types.size(); ++t) {
    const auto& e = s.entries[t];
    const std::size_t d = decomp.types[t].dim;
    Matrix block = hw_block(d, e[0], e[1], e[2]);
    auto members = type_members(decomp.types[t]);
    std::vector<Eigen::Index> idx;
    for (const auto& m : members) idx.push_back(static_cast<Eigen::Index>(sequence_index(m, decomp.local_dim)));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        u(idx[i], idx[j]) = block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return u;
}

Matrix sender_encoder(const HwIndex& s, const TypeDecomposition& decomp) {
  Matrix w = kron_power(decomp.schmidt.left_basis, decomp.n);
  return w * hw_unitary(s, decomp) * w.adjoint();
}

Matrix receiver_encoder(const HwIndex& s, const TypeDecomposition& decomp) {
  Matrix r = kron_power(decomp.schmidt.right_basis, decomp.n);
  return r * hw_unitary(s, decomp).transpose() * r.adjoint();
}

double transpose_trick_residual(const HwIndex& s, const TypeDecomposition& decomp) {
  Vector phi = decomp.reassemble();
  Vector lhs = apply_local(sender_encoder(s, decomp), phi, decomp.space, decomp.left_labels());
  Vector rhs = apply_local(receiver_encoder(s, decomp), phi, decomp.space, decomp.right_labels());
  return (lhs - rhs).norm();
}

HwIndex sample_index(const TypeDecomposition& decomp, std::uint64_t seed, std::uint64_t stream) {
  Rng rng = make_rng(seed, stream);
  HwIndex s;
  for (const auto& t : decomp.types) {
    std::uniform_int_distribution<std::size_t> pick(0, t.dim - 1);
    std::uniform_int_distribution<std::size_t> bit(0, 1);
    std::size_t x = pick(rng);
    std::size_t z = pick(rng);
    std::size_t b = bit(rng);
    s.entries.push_back({x, z, b});
  }
  return s;
}

EaCodeBook sample_code(const TypeDecomposition& decomp, std::size_t message_count, std::uint64_t seed) {
  if (message_count == 0) throw ValidationError("code needs at least one message");
  EaCodeBook book;
  book.seed = seed;
  book.message_count = message_count;
  for (std::size_t m = 0; m < message_count; ++m) book.entries.push_back(sample_index(decomp, seed, m));
  return book;
}

DensityOperator channel_output_power(const KrausChannel& ch, const PureState& phi, std::size_t n) {
  if (ch.in_space().size() != 1) throw ValidationError("expected a single-sender channel");
  const std::string& in = ch.in_space().labels()[0];
  std::string ref = reference_label(phi, in);
  DensityOperator rho = apply_channel(ch, phi.density(), {in});
  Labels order = {ref};
  order.insert(order.end(), ch.out_space().labels().begin(), ch.out_space().labels().end());
  DensityOperator single(permute(rho, order));
  return DensityOperator(tensor_power(single, n));
}

DensityOperator encode(const EaCodeBook& book, std::size_t m, const TypeDecomposition& decomp,
                       const DensityOperator& rho_n) {
  if (m >= book.message_count || m >= book.entries.size()) throw ValidationError("message index out of range");
  return conjugate(receiver_encoder(book.entries[m], decomp), rho_n, decomp.right_labels());
}

DensityOperator encode(const EaCodeBook& book_a, std::size_t l, const TypeDecomposition& decomp_a,
                       const EaCodeBook& book_b, std::size_t m, const TypeDecomposition& decomp_b,
                       const DensityOperator& rho_n) {
  DensityOperator first = encode(book_a, l, decomp_a, rho_n);
  return encode(book_b, m, decomp_b, first);
}

Matrix receiver_type_projector(const TypeDecomposition& decomp, std::size_t t) {
  Matrix r = kron_power(decomp.schmidt.right_basis, decomp.n);
  return r * sequence_projector(decomp, t) * r.adjoint();
}

Matrix twirl(const Operator& op, const TypeDecomposition& decomp) {
  const FactorSpace& space = op.space();
  Labels a = decomp.right_labels();
  Labels rest = space.complement(a);
  FactorSpace a_space = space.select(a);
  const auto da = static_cast<Eigen::Index>(a_space.dim());
  Matrix out = Matrix::Zero(op.matrix().rows(), op.matrix().cols());
  Matrix off_support = Matrix::Identity(da, da);
  for (std::size_t t = 0; t < decomp.types.size(); ++t) {
    Matrix pt = receiver_type_projector(decomp, t);
    off_support -= pt;
    Operator pt_full = embed(Operator(a_space, pt), space);
    Operator weighted(space, pt_full.matrix() * op.matrix());
    Matrix pi_t = pt / static_cast<double>(decomp.types[t].dim);
    if (rest.empty()) {
      out += pi_t * weighted.matrix().trace();
      continue;
    }
    Operator reduced = partial_trace(weighted, rest);
    Operator term = tensor(Operator(a_space, pi_t), reduced);
    out += permute(term, space.labels()).matrix();
  }
  if (max_abs(off_support) > 1e-12) {
    Matrix q = embed(Operator(a_space, off_support), space).matrix();
    out += q * op.matrix() * q;
  }
  return out;
}

}  // namespace qmac
