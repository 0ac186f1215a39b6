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

#include "cxi/povm.hpp"

#include <cmath>
#include <sstream>

namespace cxi {

namespace {

constexpr double kOutcomeFloor = 1e-12;

void require_kraus_shapes(const std::vector<Matrix>& kraus) {
    if (kraus.empty()) throw InvalidArgument("Povm: no Kraus operators");
    const Eigen::Index d = kraus.front().rows();
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d) {
            throw DimensionMismatch("Povm: Kraus operators must be square and equal-sized");
        }
        if (!k.allFinite()) throw InvariantViolation("Povm: non-finite Kraus entry");
    }
}

void require_same_dim(const DensityMatrix& rho, const Povm& p) {
    if (rho.dim() != p.dim()) {
        throw DimensionMismatch("state and POVM dimensions differ");
    }
}

}  // namespace

Povm::Povm(std::vector<Matrix> kraus, Unchecked) : kraus_(std::move(kraus)) {
    require_kraus_shapes(kraus_);
}

Povm::Povm(std::vector<Matrix> kraus) : Povm(std::move(kraus), Unchecked{}) {
    const double res = completeness_residual();
    if (res > kPovmCompletenessTol) {
        std::ostringstream os;
        os << "Povm: ||sum M^dagger M - I||_max = " << res;
        throw InvariantViolation(os.str());
    }
}

Povm Povm::unvalidated(std::vector<Matrix> kraus) { return Povm(std::move(kraus), Unchecked{}); }

Povm Povm::from_effects(const std::vector<Matrix>& effects) {
    std::vector<Matrix> kraus;
    kraus.reserve(effects.size());
    for (const auto& e : effects) {
        const Eigensystem eig = hermitian_eigensystem(e);
        RealVector roots(eig.eigenvalues.size());
        for (Eigen::Index i = 0; i < roots.size(); ++i) {
            const double lambda = eig.eigenvalues[i];
            if (lambda < kEigenvalueFloor) {
                std::ostringstream os;
                os << "Povm::from_effects: effect eigenvalue " << lambda << " is negative";
                throw InvariantViolation(os.str());
            }
            roots[i] = std::sqrt(std::max(0.0, lambda));
        }
        kraus.push_back(eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint());
    }
    return Povm(std::move(kraus));
}

double Povm::completeness_residual() const {
    const Eigen::Index d = dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& k : kraus_) sum += k.adjoint() * k;
    return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

std::vector<Matrix> effects(const Povm& p) {
    std::vector<Matrix> out;
    out.reserve(p.n_outcomes());
    for (const auto& k : p.kraus()) {
        const Matrix e = k.adjoint() * k;
        out.push_back(0.5 * (e + e.adjoint().eval()));
    }
    return out;
}

ProbabilityDistribution povm_probabilities(const DensityMatrix& rho, const Povm& p) {
    require_same_dim(rho, p);
    RealVector probs(static_cast<Eigen::Index>(p.n_outcomes()));
    Eigen::Index j = 0;
    for (const auto& k : p.kraus()) {
        double value = (k.adjoint() * k * rho.matrix()).trace().real();
        if (value < 0.0 && value >= kEigenvalueFloor) value = 0.0;
        probs[j++] = value;
    }
    return ProbabilityDistribution(std::move(probs));
}

NaimarkDilation::NaimarkDilation(const Povm& p)
    : system_dim_(p.dim()), n_outcomes_(p.n_outcomes()) {
    const Eigen::Index d = system_dim_;
    const Eigen::Index n = static_cast<Eigen::Index>(n_outcomes_);
    isometry_ = Matrix::Zero(d * n, d);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Matrix& k = p.kraus()[static_cast<std::size_t>(j)];
        for (Eigen::Index s = 0; s < d; ++s) {
            isometry_.row(s * n + j) = k.row(s);
        }
    }
    const double res = isometry_residual();
    if (res > kPovmCompletenessTol) {
        std::ostringstream os;
        os << "NaimarkDilation: ||V^dagger V - I||_max = " << res;
        throw InvariantViolation(os.str());
    }
}

Matrix NaimarkDilation::dilated_projector(std::size_t j) const {
    const Eigen::Index n = static_cast<Eigen::Index>(n_outcomes_);
    Matrix proj = Matrix::Zero(dilated_dim(), dilated_dim());
    for (Eigen::Index s = 0; s < system_dim_; ++s) {
        const Eigen::Index idx = s * n + static_cast<Eigen::Index>(j);
        proj(idx, idx) = 1.0;
    }
    return proj;
}

double NaimarkDilation::isometry_residual() const {
    const Matrix gram = isometry_.adjoint() * isometry_;
    return (gram - Matrix::Identity(system_dim_, system_dim_)).cwiseAbs().maxCoeff();
}

NaimarkDilation naimark_dilate(const Povm& p) { return NaimarkDilation(p); }

DensityMatrix dilate_state(const DensityMatrix& rho, const NaimarkDilation& d) {
    if (rho.dim() != d.system_dim()) {
        throw DimensionMismatch("state and dilation dimensions differ");
    }
    return DensityMatrix(d.isometry() * rho.matrix() * d.isometry().adjoint());
}

namespace {

/// Keeps only the ancilla-diagonal blocks of a dilated operator, which is
/// sum_j (I (x) |j><j|) A (I (x) |j><j|).
Matrix ancilla_block_diagonal(const Matrix& a, Eigen::Index n_outcomes) {
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (Eigen::Index row = 0; row < a.rows(); ++row) {
        for (Eigen::Index col = 0; col < a.cols(); ++col) {
            if (row % n_outcomes == col % n_outcomes) out(row, col) = a(row, col);
        }
    }
    return out;
}

}  // namespace

double povm_coherence(const DensityMatrix& rho, const Povm& p) {
    require_same_dim(rho, p);
    const NaimarkDilation d(p);
    const DensityMatrix dilated = dilate_state(rho, d);
    const Matrix decohered =
        ancilla_block_diagonal(dilated.matrix(), static_cast<Eigen::Index>(p.n_outcomes()));
    return von_neumann_entropy(DensityMatrix(decohered)) - von_neumann_entropy(dilated);
}

double povm_ensemble_coherence(const Ensemble& e, const Povm& p) {
    if (e.dim() != p.dim()) {
        throw DimensionMismatch("ensemble and POVM dimensions differ");
    }
    CompensatedSum avg;
    for (const auto& entry : e.entries()) {
        avg.add(entry.probability * povm_coherence(entry.state, p));
    }
    return avg.value() - povm_coherence(ensemble_state(e), p);
}

double povm_mutual_information(const Ensemble& e, const Povm& p) {
    if (e.dim() != p.dim()) {
        throw DimensionMismatch("ensemble and POVM dimensions differ");
    }
    const double h_m = shannon_entropy(povm_probabilities(ensemble_state(e), p));
    CompensatedSum cond;
    for (const auto& entry : e.entries()) {
        cond.add(entry.probability * shannon_entropy(povm_probabilities(entry.state, p)));
    }
    return h_m - cond.value();
}

double povm_cxi_residual(const Ensemble& e, const Povm& p) {
    const double c = povm_ensemble_coherence(e, p);
    const double chi = holevo_information(e);
    const double info = povm_mutual_information(e, p);
    return c - (chi - info);
}

DensityMatrix post_measurement_state(const DensityMatrix& rho, const Povm& p, std::size_t j) {
    require_same_dim(rho, p);
    if (j >= p.n_outcomes()) throw InvalidArgument("post_measurement_state: outcome out of range");
    const Matrix& k = p.kraus()[j];
    const double prob = (k.adjoint() * k * rho.matrix()).trace().real();
    if (prob < kOutcomeFloor) {
        std::ostringstream os;
        os << "post_measurement_state: outcome probability " << prob << " below " << kOutcomeFloor;
        throw InvalidArgument(os.str());
    }
    return DensityMatrix(k * rho.matrix() * k.adjoint() / prob);
}

}  // namespace cxi
