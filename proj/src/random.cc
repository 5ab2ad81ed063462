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

#include "qmac/random.hpp"

#include <Eigen/QR>

namespace qmac {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Matrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      double re = normal(rng);
      double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

Matrix random_unitary(std::size_t d, Rng& rng) {
  Matrix g = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Haar measure: fix the phases of R's diagonal.
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    Complex rk = r(k, k);
    if (std::abs(rk) > 0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

Vector random_unit_vector(std::size_t d, Rng& rng) {
  Vector v = random_ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

Matrix random_density_matrix(std::size_t d, Rng& rng, std::size_t rank) {
  if (rank == 0) rank = d;
  Matrix g = random_ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

Matrix random_hermitian(std::size_t d, Rng& rng) {
  Matrix g = random_ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

KrausChannel random_channel(const FactorSpace& in, const FactorSpace& out, std::size_t kraus_count, Rng& rng) {
  const std::size_t din = in.dim();
  const std::size_t dout = out.dim();
  Matrix g = random_ginibre(dout * kraus_count, din, rng);
  Matrix v = g * operator_power(g.adjoint() * g, -0.5);
  std::vector<Matrix> kraus;
  for (std::size_t k = 0; k < kraus_count; ++k) {
    kraus.push_back(v.block(static_cast<Eigen::Index>(k * dout), 0, static_cast<Eigen::Index>(dout),
                            static_cast<Eigen::Index>(din)));
  }
  return KrausChannel(in, out, kraus);
}

}  // namespace qmac
