// Copyright 2026 The cxi-toolkit Authors
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

#pragma once

#include <cstdint>
#include <random>

#include "cxi/infotheory.hpp"
#include "cxi/povm.hpp"
#include "cxi/qmath.hpp"

namespace cxi {

using Rng = std::mt19937_64;

/// Deterministic stream derived from (master seed, stream index). Streams
/// with distinct indices are statistically independent, and the mapping is
/// fully specified so runs reproduce across schedulers.
Rng make_rng(std::uint64_t master_seed, std::uint64_t stream = 0);

/// Uniform double in [0, 1) using the top 53 bits of the generator.
double uniform01(Rng& rng);

/// Standard normal via Box-Muller on uniform01 (keeps the stream portable).
double standard_normal(Rng& rng);

/// Index sampled from unnormalized non-negative weights by inverse CDF.
Eigen::Index sample_index(const RealVector& weights, Rng& rng);

/// Full-rank mixed state G G^dagger / tr from a complex Ginibre matrix.
DensityMatrix random_density_matrix(Eigen::Index dim, Rng& rng);

PureState random_pure_state(Eigen::Index dim, Rng& rng);

/// Haar-like random orthonormal basis (QR of a Ginibre matrix).
ProjectiveMeasurement random_projective_measurement(Eigen::Index dim, Rng& rng);

/// Random N-outcome POVM: Kraus operators A_j (sum_k A_k^dagger A_k)^(-1/2),
/// which satisfy the completeness relation by construction.
Povm random_povm(Eigen::Index dim, std::size_t n_outcomes, Rng& rng);

/// Random point of the probability simplex (normalized exponentials).
ProbabilityDistribution random_distribution(Eigen::Index n, Rng& rng);

/// Ensemble of random mixed states with a random prior; labels 0..n-1.
Ensemble random_ensemble(Eigen::Index dim, std::size_t n_states, Rng& rng);

}  // namespace cxi
