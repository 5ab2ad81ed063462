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

#ifndef QMAC_QMAT_HPP
#define QMAC_QMAT_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmac {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised when an operator would exceed the configured dimension cap.
class DimensionCapError : public std::runtime_error {
 public:
  DimensionCapError(std::size_t required, std::size_t available);
  std::size_t required() const { return required_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

/// Raised on malformed inputs (bad labels, broken invariants, ranges).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Default 4096; QMAC_DIM_CAP in the environment overrides it.
std::size_t dimension_cap();

/// Throws DimensionCapError if `dim` exceeds the cap.
void check_dimension(std::size_t dim);

/// Ordered list of named tensor factors.
class FactorSpace {
 public:
  FactorSpace() = default;
  FactorSpace(std::vector<std::string> labels, std::vector<std::size_t> dims);

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }

  bool has(const std::string& label) const;
  std::size_t position(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const;
  std::size_t dim_of(const std::vector<std::string>& labels) const;

  /// Factors named in `labels`, in the order given.
  FactorSpace select(const std::vector<std::string>& labels) const;
  /// Factors not named in `labels`, in the original order.
  std::vector<std::string> complement(const std::vector<std::string>& labels) const;

  bool operator==(const FactorSpace& other) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> dims_;
  std::size_t dim_ = 1;
};

FactorSpace concat(const FactorSpace& a, const FactorSpace& b);

/// Label of the k-th copy (1-based) in an n-fold power.
std::string copy_label(const std::string& label, std::size_t k);

/// n-fold power, copy-major: X_1 Y_1 X_2 Y_2 ...
FactorSpace power_space(const FactorSpace& space, std::size_t n);

/// Labels of `labels` across all n copies, copy-major.
std::vector<std::string> copy_labels(const std::vector<std::string>& labels, std::size_t n);

/// Square matrix with a labeled factor structure.
class Operator {
 public:
  Operator() = default;
  Operator(FactorSpace space, Matrix mat);

  const FactorSpace& space() const { return space_; }
  const Matrix& matrix() const { return mat_; }
  std::size_t dim() const { return space_.dim(); }

 private:
  FactorSpace space_;
  Matrix mat_;
};

/// Hermitian, unit trace, PSD.
class DensityOperator : public Operator {
 public:
  DensityOperator() = default;
  DensityOperator(FactorSpace space, Matrix mat);
  explicit DensityOperator(const Operator& op);
};

/// Unit vector with a labeled factor structure.
class PureState {
 public:
  PureState() = default;
  PureState(FactorSpace space, Vector vec);

  const FactorSpace& space() const { return space_; }
  const Vector& vector() const { return vec_; }
  DensityOperator density() const;

 private:
  FactorSpace space_;
  Vector vec_;
};

class KrausChannel {
 public:
  KrausChannel() = default;
  KrausChannel(FactorSpace in_space, FactorSpace out_space, std::vector<Matrix> kraus);

  const FactorSpace& in_space() const { return in_; }
  const FactorSpace& out_space() const { return out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  /// Same map with the factors renamed.
  KrausChannel relabeled(std::vector<std::string> in_labels, std::vector<std::string> out_labels) const;

 private:
  FactorSpace in_;
  FactorSpace out_;
  std::vector<Matrix> kraus_;
};

/// Positive operators with sum at most the identity.
class PovmSet {
 public:
  PovmSet() = default;
  PovmSet(FactorSpace space, std::vector<Matrix> elements);

  const FactorSpace& space() const { return space_; }
  const std::vector<Matrix>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  /// Largest eigenvalue of the element sum.
  double sum_max_eigenvalue() const;

 private:
  FactorSpace space_;
  std::vector<Matrix> elements_;
};

/// Every PovmSet built in this process: how many, and the largest eigenvalue of an element sum.
struct PovmAudit {
  std::size_t count = 0;
  double max_sum_eigenvalue = 0;
  std::size_t violations = 0;  // sums above I + 1e-9
};
PovmAudit povm_audit();
void reset_povm_audit();

struct Eigensystem {
  RealVector values;  // descending
  Matrix vectors;     // columns
};

double max_abs(const Matrix& m);
double hermitian_defect(const Matrix& m);

Operator identity(const FactorSpace& space);
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(const std::vector<Operator>& ops);
PureState tensor(const PureState& a, const PureState& b);
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
Matrix kron_power(const Matrix& m, std::size_t n);

/// Copies relabeled into power_space(space, n).
Operator tensor_power(const Operator& op, std::size_t n);
PureState tensor_power(const PureState& psi, std::size_t n);

/// Reorder factors; `order` is a permutation of the labels.
Operator permute(const Operator& op, const std::vector<std::string>& order);
PureState permute(const PureState& psi, const std::vector<std::string>& order);
Vector permute_vector(const Vector& v, const FactorSpace& space, const std::vector<std::string>& order);

/// Keeps the named factors, in their original order.
Operator partial_trace(const Operator& op, const std::vector<std::string>& keep);
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep);

/// op ⊗ I, laid out in the order of `target`.
Operator embed(const Operator& op, const FactorSpace& target);

Eigensystem eig_hermitian(const Matrix& m);

Matrix operator_power(const Matrix& m, double exponent, double support_cutoff = 1e-12);

/// Projector onto the span of eigenvectors with eigenvalue above `cutoff`.
Matrix support_projector(const Matrix& m, double cutoff = 1e-12);

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& state,
                              const std::vector<std::string>& acting_on);

/// U op U† with U acting on `labels` (in that order), identity elsewhere.
Operator conjugate(const Matrix& u, const Operator& op, const std::vector<std::string>& labels);
DensityOperator conjugate(const Matrix& u, const DensityOperator& rho, const std::vector<std::string>& labels);
PureState apply_local(const Matrix& u, const PureState& psi, const std::vector<std::string>& labels);
Vector apply_local(const Matrix& u, const Vector& v, const FactorSpace& space,
                   const std::vector<std::string>& labels);

/// X(x)|j> = |j+x mod d>.
Matrix weyl_shift(std::size_t d, std::size_t x);
/// Z(z)|j> = exp(2 pi i j z / d)|j>.
Matrix weyl_clock(std::size_t d, std::size_t z);

}  // namespace qmac

#endif
