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

#ifndef QMAC_TYPICALITY_HPP
#define QMAC_TYPICALITY_HPP

#include <cstddef>
#include <vector>

#include "qmac/info.hpp"
#include "qmac/qmat.hpp"

namespace qmac {

using Sequence = std::vector<std::size_t>;

struct TypeClass {
  std::vector<std::size_t> counts;
  std::size_t dim = 0;
  Sequence representative;
};

/// Number of sequences k^n, or DimensionCapError above the cap.
std::size_t sequence_count(std::size_t n, std::size_t alphabet_size);

/// Compositions of n into `alphabet_size` parts, counts descending lexicographically.
std::vector<TypeClass> enumerate_types(std::size_t n, std::size_t alphabet_size);

/// Members of the type class, lexicographically ordered.
std::vector<Sequence> type_members(const TypeClass& t);

/// Sequence index z_1 ... z_n read as a base-k number.
std::size_t sequence_index(const Sequence& s, std::size_t alphabet_size);
Sequence index_sequence(std::size_t index, std::size_t n, std::size_t alphabet_size);

/// Projector onto span{|b_{z_1}> ... |b_{z_n}> : z in T_t}; columns of `local_basis` are the b_z.
Operator type_class_projector(const TypeClass& t, const Matrix& local_basis, const std::string& label = "A");

struct TypicalProjector {
  FactorSpace space;
  Operator projector;
  double delta = 0;
  double base_entropy = 0;
  double trace = 0;         // Tr{Pi rho^{(x)n}}
  double max_retained = 0;  // largest retained eigenvalue of rho^{(x)n}
  double min_retained = 0;  // smallest retained eigenvalue of rho^{(x)n}
  std::size_t rank = 0;
};

/// Eigenvectors of rho^{(x)n} with |-(1/n) log2 lambda - H(rho)| <= delta; zero eigenvalues excluded.
TypicalProjector typical_projector(const DensityOperator& rho, std::size_t n, double delta);

/// Typical projector of the marginal on `labels`, on copy_labels(labels, n).
TypicalProjector marginal_typical_projector(const DensityOperator& rho, const Labels& labels, std::size_t n,
                                            double delta);

struct PackingConstants {
  double epsilon = 1;
  double inv_d = 0;  // 1/d
  double inv_D = 0;  // 1/D
  double commutator_residual = 0;

  double d() const;
  double D() const;
};

/// Measured hypotheses of the packing lemma for {p(x), rho_x}, Pi and {Pi_x}.
PackingConstants measure_packing_constants(const std::vector<double>& probs, const std::vector<Matrix>& states,
                                           const Matrix& code_projector,
                                           const std::vector<Matrix>& codeword_projectors);
PackingConstants measure_packing_constants(const Ensemble& ensemble, const Matrix& code_projector,
                                           const std::vector<Matrix>& codeword_projectors);

}  // namespace qmac

#endif
