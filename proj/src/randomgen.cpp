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

#include "cxi/randomgen.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>

namespace cxi {

Rng make_rng(std::uint64_t master_seed, std::uint64_t stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    return Rng(seq);
}

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
    // Box-Muller; reject u1 == 0 so the log stays finite.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::Index sample_index(const RealVector& weights, Rng& rng) {
    const double total = weights.sum();
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.size() - 1;
}

namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
        }
    }
    return g;
}

}  // namespace

DensityMatrix random_density_matrix(Eigen::Index dim, Rng& rng) {
    const Matrix g = ginibre(dim, dim, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

PureState random_pure_state(Eigen::Index dim, Rng& rng) {
    Vector v = ginibre(dim, 1, rng).col(0);
    v.normalize();
    return PureState(v);
}

ProjectiveMeasurement random_projective_measurement(Eigen::Index dim, Rng& rng) {
    const Matrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    return ProjectiveMeasurement(q);
}

Povm random_povm(Eigen::Index dim, std::size_t n_outcomes, Rng& rng) {
    std::vector<Matrix> raw;
    raw.reserve(n_outcomes);
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t j = 0; j < n_outcomes; ++j) {
        raw.push_back(ginibre(dim, dim, rng));
        sum += raw.back().adjoint() * raw.back();
    }
    // sum is positive definite almost surely; normalize by its inverse root.
    const Eigensystem eig = hermitian_eigensystem(sum);
    RealVector inv_roots(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < inv_roots.size(); ++i) {
        inv_roots[i] = 1.0 / std::sqrt(eig.eigenvalues[i]);
    }
    const Matrix inv_root = eig.eigenvectors * inv_roots.asDiagonal() * eig.eigenvectors.adjoint();
    std::vector<Matrix> kraus;
    kraus.reserve(n_outcomes);
    for (const auto& a : raw) kraus.push_back(a * inv_root);
    return Povm(std::move(kraus));
}

ProbabilityDistribution random_distribution(Eigen::Index n, Rng& rng) {
    RealVector w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double u = uniform01(rng);
        while (u <= 0.0) u = uniform01(rng);
        w[i] = -std::log(u);
    }
    w /= w.sum();
    return ProbabilityDistribution(std::move(w));
}

Ensemble random_ensemble(Eigen::Index dim, std::size_t n_states, Rng& rng) {
    const ProbabilityDistribution prior =
        random_distribution(static_cast<Eigen::Index>(n_states), rng);
    std::vector<EnsembleEntry> entries;
    entries.reserve(n_states);
    for (std::size_t i = 0; i < n_states; ++i) {
        entries.push_back(EnsembleEntry{static_cast<double>(i),
                                        prior[static_cast<Eigen::Index>(i)],
                                        random_density_matrix(dim, rng)});
    }
    return Ensemble(std::move(entries));
}

}  // namespace cxi
