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

#include "cxi/infotheory.hpp"

#include <cmath>
#include <sstream>

namespace cxi {

namespace {

constexpr double kSupportFloor = 1e-12;

void require_same_dim(const Ensemble& e, const ProjectiveMeasurement& m) {
    if (e.dim() != m.dim()) {
        throw DimensionMismatch("ensemble and measurement dimensions differ");
    }
}

}  // namespace

Ensemble::Ensemble(std::vector<EnsembleEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InvalidArgument("Ensemble: no entries");
    const Eigen::Index d = entries_.front().state.dim();
    for (const auto& entry : entries_) {
        if (entry.state.dim() != d) {
            throw DimensionMismatch("Ensemble: states of unequal dimension");
        }
    }
    label_distribution();  // validates the probabilities
}

ProbabilityDistribution Ensemble::label_distribution() const {
    RealVector p(static_cast<Eigen::Index>(entries_.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        p[i] = entries_[static_cast<std::size_t>(i)].probability;
    }
    return ProbabilityDistribution(std::move(p));
}

DensityMatrix ensemble_state(const Ensemble& e) {
    CompensatedMatrixSum acc(e.dim(), e.dim());
    for (const auto& entry : e.entries()) {
        acc.add(entry.probability * entry.state.matrix());
    }
    return DensityMatrix(acc.value());
}

double holevo_information(const Ensemble& e) {
    CompensatedSum avg;
    for (const auto& entry : e.entries()) {
        avg.add(entry.probability * von_neumann_entropy(entry.state));
    }
    return von_neumann_entropy(ensemble_state(e)) - avg.value();
}

double conditional_measurement_entropy(const Ensemble& e, const ProjectiveMeasurement& m) {
    require_same_dim(e, m);
    CompensatedSum acc;
    for (const auto& entry : e.entries()) {
        acc.add(entry.probability * shannon_entropy(measurement_probabilities(entry.state, m)));
    }
    return acc.value();
}

double mutual_information(const Ensemble& e, const ProjectiveMeasurement& m) {
    require_same_dim(e, m);
    const double h_m = shannon_entropy(measurement_probabilities(ensemble_state(e), m));
    return h_m - conditional_measurement_entropy(e, m);
}

double relative_entropy_of_coherence(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
    if (rho.dim() != m.dim()) {
        throw DimensionMismatch("state and measurement dimensions differ");
    }
    return shannon_entropy(measurement_probabilities(rho, m)) - von_neumann_entropy(rho);
}

double coherence_via_relative_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
    if (rho.dim() != m.dim()) {
        throw DimensionMismatch("state and measurement dimensions differ");
    }
    // tr{rho log rho} from the spectrum of rho.
    const Eigensystem rho_eig = hermitian_eigensystem(rho.matrix());
    CompensatedSum tr_rho_log_rho;
    for (Eigen::Index i = 0; i < rho_eig.eigenvalues.size(); ++i) {
        const double lambda = rho_eig.eigenvalues[i];
        if (lambda > kSupportFloor) tr_rho_log_rho.add(lambda * std::log(lambda));
    }
    // tr{rho log Delta[rho]} from the spectrum of the decohered state.
    const Eigensystem delta_eig = hermitian_eigensystem(decohere(rho, m).matrix());
    CompensatedSum tr_rho_log_delta;
    for (Eigen::Index j = 0; j < delta_eig.eigenvalues.size(); ++j) {
        const double d = delta_eig.eigenvalues[j];
        const Vector u = delta_eig.eigenvectors.col(j);
        const double weight = (u.adjoint() * rho.matrix() * u)(0, 0).real();
        if (d <= kSupportFloor) {
            if (weight > kSupportFloor) {
                std::ostringstream os;
                os << "coherence_via_relative_entropy: rho has weight " << weight
                   << " outside the support of Delta[rho]";
                throw SupportError(os.str());
            }
            continue;
        }
        tr_rho_log_delta.add(weight * std::log(d));
    }
    return tr_rho_log_rho.value() - tr_rho_log_delta.value();
}

double ensemble_coherence(const Ensemble& e, const ProjectiveMeasurement& m) {
    require_same_dim(e, m);
    CompensatedSum avg;
    for (const auto& entry : e.entries()) {
        avg.add(entry.probability * relative_entropy_of_coherence(entry.state, m));
    }
    return avg.value() - relative_entropy_of_coherence(ensemble_state(e), m);
}

double cxi_residual(const Ensemble& e, const ProjectiveMeasurement& m) {
    const double c = ensemble_coherence(e, m);
    const double chi = holevo_information(e);
    const double info = mutual_information(e, m);
    return c - (chi - info);
}

}  // namespace cxi
