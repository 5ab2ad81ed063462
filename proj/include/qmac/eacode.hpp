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

#ifndef QMAC_EACODE_HPP
#define QMAC_EACODE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qmac/info.hpp"
#include "qmac/qmat.hpp"
#include "qmac/typicality.hpp"

namespace qmac {

/// |phi> = sum_z c_z |l_z>|r_z>; columns of left_basis / right_basis are l_z / r_z.
struct SchmidtDecomposition {
  Labels left_labels;
  Labels right_labels;
  RealVector coefficients;  // descending, length min(d_left, d_right)
  Matrix left_basis;
  Matrix right_basis;

  std::size_t rank(double cutoff = 1e-14) const;
  Vector reconstruct() const;  // in left-then-right order
};

SchmidtDecomposition schmidt(const PureState& phi, const Labels& cut);

/// |phi>^{(x)n} = sum_t sqrt(p(t)) |Phi_t>, types over the Schmidt support.
struct TypeDecomposition {
  SchmidtDecomposition schmidt;
  std::size_t n = 0;
  std::size_t local_dim = 0;  // d of each side
  FactorSpace space;          // power space of phi, copy-major
  std::vector<TypeClass> types;
  std::vector<double> probs;
  std::vector<PureState> blocks;

  Labels left_labels() const;   // A'_1 ... A'_n
  Labels right_labels() const;  // A_1 ... A_n
  Vector reassemble() const;
};

/// Requires equal local dimensions on both sides of the cut.
TypeDecomposition type_decompose(const PureState& phi, const Labels& cut, std::size_t n);

/// (x_t, z_t, b_t) for every type, in TypeDecomposition order.
struct HwIndex {
  std::vector<std::array<std::size_t, 3>> entries;
  bool operator==(const HwIndex& other) const = default;
};

/// |S| = prod_t 2 d_t^2, saturating at UINT64_MAX.
std::uint64_t index_set_size(const TypeDecomposition& decomp);
/// Mixed-radix decoding of an ordinal in [0, |S|).
HwIndex index_from_ordinal(const TypeDecomposition& decomp, std::uint64_t ordinal);
std::vector<HwIndex> all_indices(const TypeDecomposition& decomp);

/// (-1)^b X(x) Z(z) on one d-dimensional block.
Matrix hw_block(std::size_t d, std::size_t x, std::size_t z, std::size_t b);

/// U(s) on the Schmidt sequence basis (index z_1...z_n base d); identity off the Schmidt support.
Matrix hw_unitary(const HwIndex& s, const TypeDecomposition& decomp);
/// U(s) on A'^n in the computational basis.
Matrix sender_encoder(const HwIndex& s, const TypeDecomposition& decomp);
/// U^T(s) on A^n in the computational basis.
Matrix receiver_encoder(const HwIndex& s, const TypeDecomposition& decomp);

/// ||(U(s) (x) I - I (x) U^T(s)) |phi>^{(x)n}||.
double transpose_trick_residual(const HwIndex& s, const TypeDecomposition& decomp);

struct EaCodeBook {
  std::uint64_t seed = 0;
  std::size_t message_count = 0;
  std::vector<HwIndex> entries;
};

/// Uniform over S; message m draws from its own stream so books are reproducible per message.
EaCodeBook sample_code(const TypeDecomposition& decomp, std::size_t message_count, std::uint64_t seed);
HwIndex sample_index(const TypeDecomposition& decomp, std::uint64_t seed, std::uint64_t stream);

/// rho^{A^n B^n} = ((id (x) N)(phi))^{(x)n}, with phi's reference kept and the channel input replaced.
DensityOperator channel_output_power(const KrausChannel& ch, const PureState& phi, std::size_t n);

/// sigma = U^T rho U^* with the encoder acting on decomp.right_labels().
DensityOperator encode(const EaCodeBook& book, std::size_t m, const TypeDecomposition& decomp,
                       const DensityOperator& rho_n);
/// Two senders; each encoder acts on its own reference block.
DensityOperator encode(const EaCodeBook& book_a, std::size_t l, const TypeDecomposition& decomp_a,
                       const EaCodeBook& book_b, std::size_t m, const TypeDecomposition& decomp_b,
                       const DensityOperator& rho_n);

/// Average of V O V^dagger over S, V = receiver_encoder: sum_t pi_t (x) Tr_{A^n}{(Pi_t (x) I) O} plus the
/// off-support block.
Matrix twirl(const Operator& op, const TypeDecomposition& decomp);

/// Projector onto the t-th type subspace of A^n (receiver side), computational basis.
Matrix receiver_type_projector(const TypeDecomposition& decomp, std::size_t t);

}  // namespace qmac

#endif
