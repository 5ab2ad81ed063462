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

#ifndef QMAC_RANDOM_HPP
#define QMAC_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qmac/qmat.hpp"

namespace qmac {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream) pairs.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Matrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);
Matrix random_unitary(std::size_t d, Rng& rng);
Vector random_unit_vector(std::size_t d, Rng& rng);
/// Rank-`rank` density matrix (0 means full rank).
Matrix random_density_matrix(std::size_t d, Rng& rng, std::size_t rank = 0);
Matrix random_hermitian(std::size_t d, Rng& rng);
KrausChannel random_channel(const FactorSpace& in, const FactorSpace& out, std::size_t kraus_count, Rng& rng);

}  // namespace qmac

#endif
