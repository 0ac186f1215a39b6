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

#include "cxi/discrimination.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cxi {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix projector_at(double angle) { return rotated_state(angle).projector(); }

}  // namespace

std::array<double, 3> BlochDirection::unit_vector() const {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
            std::cos(polar)};
}

DiscriminationProblem::DiscriminationProblem(double theta_) : theta(theta_) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        std::ostringstream os;
        os << "DiscriminationProblem: theta = " << theta_ << " outside [0, pi]";
        throw InvalidArgument(os.str());
    }
}

PureState rotated_state(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    // |up_x> = (1,1)/sqrt(2), |down_x> = (1,-1)/sqrt(2) in the sigma_z basis.
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    Vector amps(2);
    amps << Complex((c + s) * inv_sqrt2, 0.0), Complex((c - s) * inv_sqrt2, 0.0);
    return PureState(amps);
}

ProjectiveMeasurement basis_from_direction(const BlochDirection& d) {
    const double half = d.polar / 2.0;
    const Complex phase = std::polar(1.0, d.azimuth);
    Matrix basis(2, 2);
    basis.col(0) << Complex(std::cos(half), 0.0), phase * std::sin(half);
    basis.col(1) << Complex(std::sin(half), 0.0), -phase * std::cos(half);
    return ProjectiveMeasurement(basis);
}

Ensemble discrimination_ensemble(const DiscriminationProblem& p) {
    std::vector<EnsembleEntry> entries;
    entries.push_back({0.0, DiscriminationProblem::prior, DensityMatrix(projector_at(0.0))});
    entries.push_back({p.theta, DiscriminationProblem::prior, DensityMatrix(projector_at(p.theta))});
    return Ensemble(std::move(entries));
}

std::vector<LandscapeSample> coherence_landscape(const DiscriminationProblem& p,
                                                 int n_polar, int n_azimuth) {
    if (n_polar < 2 || n_azimuth < 2) {
        throw InvalidArgument("coherence_landscape: grid must be at least 2x2");
    }
    const Ensemble e = discrimination_ensemble(p);
    const double chi = holevo_information(e);
    std::vector<LandscapeSample> samples;
    samples.reserve(static_cast<std::size_t>(n_polar) * static_cast<std::size_t>(n_azimuth));
    for (int i = 0; i < n_polar; ++i) {
        const double polar = kPi * i / (n_polar - 1);
        for (int j = 0; j < n_azimuth; ++j) {
            const double azimuth = 2.0 * kPi * j / n_azimuth;
            const BlochDirection dir{polar, azimuth};
            const double c = ensemble_coherence(e, basis_from_direction(dir));
            samples.push_back({dir, c, c / chi});
        }
    }
    return samples;
}

const LandscapeSample& landscape_argmin(const std::vector<LandscapeSample>& samples) {
    if (samples.empty()) throw InvalidArgument("landscape_argmin: no samples");
    std::size_t best = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].coherence < samples[best].coherence) best = i;
    }
    return samples[best];
}

ProjectiveMeasurement helstrom_basis(double theta) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw InvalidArgument("helstrom_basis: theta outside [0, pi]");
    }
    return ProjectiveMeasurement(
        std::vector<PureState>{rotated_state(theta / 2.0 - kPi / 2.0),
                               rotated_state(theta / 2.0 + kPi / 2.0)});
}

double coherence_at_angle(const DiscriminationProblem& p, double alpha) {
    const ProjectiveMeasurement basis(
        std::vector<PureState>{rotated_state(alpha - kPi), rotated_state(alpha)});
    return ensemble_coherence(discrimination_ensemble(p), basis);
}

double refine_min_coherence_angle(const DiscriminationProblem& p) {
    // The basis at alpha equals the basis at alpha + pi; scan one period.
    constexpr int kSeeds = 360;
    double best_alpha = 0.0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSeeds; ++i) {
        const double alpha = kPi * i / kSeeds;
        const double value = coherence_at_angle(p, alpha);
        if (value < best_value) {
            best_value = value;
            best_alpha = alpha;
        }
    }
    double lo = best_alpha - kPi / kSeeds;
    double hi = best_alpha + kPi / kSeeds;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = coherence_at_angle(p, x1);
    double f2 = coherence_at_angle(p, x2);
    while (hi - lo > 1e-9) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = coherence_at_angle(p, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = coherence_at_angle(p, x2);
        }
    }
    double alpha = 0.5 * (lo + hi);
    alpha = std::fmod(alpha, kPi);
    if (alpha < 0.0) alpha += kPi;
    return alpha;
}

Povm usd_povm(double theta) {
    if (!(theta > 0.0 && theta <= kPi)) {
        std::ostringstream os;
        os << "usd_povm: theta = " << theta
           << " outside (0, pi]; at theta = 0 the states coincide and the "
              "measurement is vacuous";
        throw InvalidArgument(os.str());
    }
    const Matrix p_anti_theta = projector_at(theta + kPi);
    const Matrix p_anti_zero = projector_at(kPi);
    const Eigensystem eig = hermitian_eigensystem(p_anti_zero + p_anti_theta);
    const double lambda_max = eig.eigenvalues[eig.eigenvalues.size() - 1];
    const double c = 1.0 / lambda_max;
    const Matrix unsure = Matrix::Identity(2, 2) - c * (p_anti_theta + p_anti_zero);
    return Povm::from_effects({c * p_anti_theta, c * p_anti_zero, unsure});
}

double projective_success_probability(double theta) {
    const ProjectiveMeasurement basis = helstrom_basis(theta);
    const Matrix rho0 = projector_at(0.0);
    const Matrix rho_theta = projector_at(theta);
    const double p00 = (basis.projector(0) * rho0).trace().real();
    const double p11 = (basis.projector(1) * rho_theta).trace().real();
    return 0.5 * (p00 + p11);
}

double usd_success_probability(double theta) {
    const std::vector<Matrix> eff = effects(usd_povm(theta));
    const Matrix rho0 = projector_at(0.0);
    const Matrix rho_theta = projector_at(theta);
    const double s0 = ((eff[0] + 0.5 * eff[2]) * rho0).trace().real();
    const double s1 = ((eff[1] + 0.5 * eff[2]) * rho_theta).trace().real();
    return 0.5 * (s0 + s1);
}

std::vector<DiscriminationReportRow> coherence_vs_theta_report(const std::vector<double>& thetas) {
    std::vector<DiscriminationReportRow> rows;
    rows.reserve(thetas.size());
    for (double theta : thetas) {
        const DiscriminationProblem problem(theta);
        const Ensemble e = discrimination_ensemble(problem);
        const double chi = holevo_information(e);
        const double proj = ensemble_coherence(e, helstrom_basis(theta));
        const double usd = povm_ensemble_coherence(e, usd_povm(theta));
        rows.push_back({theta, chi, proj / chi, usd / chi,
                        1.0 - projective_success_probability(theta),
                        1.0 - usd_success_probability(theta)});
    }
    return rows;
}

}  // namespace cxi
