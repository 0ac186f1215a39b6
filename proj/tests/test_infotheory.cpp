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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cxi/infotheory.hpp"
#include "cxi/randomgen.hpp"

using namespace cxi;

namespace {

const double kLn2 = std::numbers::ln2;

/// cos(t/2)|up_x> + sin(t/2)|down_x| as a projector.
DensityMatrix bloch_state(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const double inv = 1.0 / std::numbers::sqrt2;
    Vector amps(2);
    amps << Complex((c + s) * inv, 0), Complex((c - s) * inv, 0);
    return DensityMatrix(PureState(amps));
}

Ensemble two_state_ensemble(double theta) {
    return Ensemble({{0.0, 0.5, bloch_state(0.0)}, {theta, 0.5, bloch_state(theta)}});
}

ProjectiveMeasurement sigma_z_basis() { return ProjectiveMeasurement::computational(2); }

ProjectiveMeasurement sigma_x_basis() {
    Matrix b(2, 2);
    const double s = 1.0 / std::numbers::sqrt2;
    b << s, s, s, -s;
    return ProjectiveMeasurement(b);
}

/// Qubit basis along the axis at the given polar angle (azimuth 0).
ProjectiveMeasurement basis_at_polar(double polar) {
    Matrix b(2, 2);
    b.col(0) << Complex(std::cos(polar / 2), 0), Complex(std::sin(polar / 2), 0);
    b.col(1) << Complex(std::sin(polar / 2), 0), Complex(-std::cos(polar / 2), 0);
    return ProjectiveMeasurement(b);
}

/// chi of two equiprobable pure states with overlap cos(theta/2): binary
/// entropy of the ensemble-state spectrum (1 +- cos(theta/2))/2.
double two_state_chi_oracle(double theta) {
    const double p = (1.0 + std::cos(theta / 2)) / 2.0;
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -(p * std::log(p) + (1 - p) * std::log(1 - p));
}

}  // namespace

TEST_CASE("ensemble_state: single entry, antipodal pairs") {
    const DensityMatrix rho = bloch_state(0.7);
    const Ensemble single({{0.7, 1.0, rho}});
    CHECK((ensemble_state(single).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);

    Matrix up = Matrix::Zero(2, 2), down = Matrix::Zero(2, 2);
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    const Ensemble z_pair({{0.0, 0.5, DensityMatrix(up)}, {1.0, 0.5, DensityMatrix(down)}});
    CHECK((ensemble_state(z_pair).matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-14);

    // Antipodal Bloch pair averages to the maximally mixed state; the oracle
    // is the explicit matrix sum.
    const Ensemble x_pair = two_state_ensemble(std::numbers::pi);
    const Matrix expected =
        0.5 * bloch_state(0.0).matrix() + 0.5 * bloch_state(std::numbers::pi).matrix();
    CHECK((ensemble_state(x_pair).matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((expected - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("holevo_information reproduces the two-state discrimination values") {
    // Orthogonal states: chi = log 2 ~ 0.69.
    CHECK(std::abs(holevo_information(two_state_ensemble(std::numbers::pi)) - kLn2) < 1e-12);

    // theta = pi/2: chi ~ 0.42; theta = pi/10: chi ~ 0.04.
    const double chi_half = holevo_information(two_state_ensemble(std::numbers::pi / 2));
    CHECK(std::abs(chi_half - 0.42) < 0.005);
    CHECK(std::abs(chi_half - two_state_chi_oracle(std::numbers::pi / 2)) < 1e-12);
    CHECK(std::abs(chi_half - 0.4164955306996875) < 1e-12);

    const double chi_tenth = holevo_information(two_state_ensemble(std::numbers::pi / 10));
    CHECK(std::abs(chi_tenth - 0.04) < 0.005);
    CHECK(std::abs(chi_tenth - two_state_chi_oracle(std::numbers::pi / 10)) < 1e-12);
    CHECK(std::abs(chi_tenth - 0.03747220656482757) < 1e-12);
}

TEST_CASE("conditional_measurement_entropy: deterministic, single-entry, antipodal") {
    Matrix up = Matrix::Zero(2, 2), down = Matrix::Zero(2, 2);
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    const Ensemble z_states({{0.0, 0.4, DensityMatrix(up)}, {1.0, 0.6, DensityMatrix(down)}});
    CHECK(conditional_measurement_entropy(z_states, sigma_z_basis()) == doctest::Approx(0.0));

    const Ensemble single({{0.0, 1.0, bloch_state(0.4)}});
    const double expected = shannon_entropy(measurement_probabilities(bloch_state(0.4), sigma_z_basis()));
    CHECK(conditional_measurement_entropy(single, sigma_z_basis()) ==
          doctest::Approx(expected).epsilon(1e-12));

    // Both antipodal-x states give (1/2, 1/2) along z.
    CHECK(std::abs(conditional_measurement_entropy(two_state_ensemble(std::numbers::pi),
                                                   sigma_z_basis()) -
                   kLn2) < 1e-12);
}

TEST_CASE("mutual_information: perfect, vacuous, and cross-checked cases") {
    const Ensemble antipodal = two_state_ensemble(std::numbers::pi);
    CHECK(std::abs(mutual_information(antipodal, sigma_x_basis()) - kLn2) < 1e-12);
    CHECK(std::abs(mutual_information(antipodal, sigma_z_basis())) < 1e-12);

    Rng rng = make_rng(8101);
    for (int trial = 0; trial < 20; ++trial) {
        const Ensemble e = random_ensemble(2, 2, rng);
        const ProjectiveMeasurement basis = random_projective_measurement(2, rng);
        const double info = mutual_information(e, basis);
        const double chi = holevo_information(e);
        const double coherence = ensemble_coherence(e, basis);
        CHECK(std::abs(info - (chi - coherence)) < 1e-9);
    }
}

TEST_CASE("relative_entropy_of_coherence: incoherent, maximal, and oracle cases") {
    Matrix diag = Matrix::Zero(3, 3);
    diag(0, 0) = 0.2;
    diag(1, 1) = 0.3;
    diag(2, 2) = 0.5;
    CHECK(relative_entropy_of_coherence(DensityMatrix(diag),
                                        ProjectiveMeasurement::computational(3)) ==
          doctest::Approx(0.0));

    CHECK(std::abs(relative_entropy_of_coherence(bloch_state(0.0), sigma_z_basis()) - kLn2) <
          1e-12);

    // Relative-entropy form tr{rho log rho - rho log Delta[rho]} as an
    // independent route (full-rank states keep the supports aligned).
    Rng rng = make_rng(8102);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_density_matrix(2, rng);
        const ProjectiveMeasurement basis = random_projective_measurement(2, rng);
        const double direct = relative_entropy_of_coherence(rho, basis);
        const double via_divergence = coherence_via_relative_entropy(rho, basis);
        CHECK(std::abs(direct - via_divergence) < 1e-8);
        CHECK(direct >= -1e-9);
    }
}

TEST_CASE("coherence_via_relative_entropy handles rank-deficient states") {
    // For projective decoherence the support of rho always sits inside the
    // support of Delta[rho] (<m|rho|m> = 0 forces rho|m> = 0), so the
    // SupportError guard protects only against numerical misclassification;
    // rank-deficient inputs must evaluate cleanly.
    Matrix proj = Matrix::Zero(3, 3);
    proj(0, 0) = 1.0;
    CHECK(coherence_via_relative_entropy(DensityMatrix(proj),
                                         ProjectiveMeasurement::computational(3)) ==
          doctest::Approx(0.0));
    CHECK(std::abs(coherence_via_relative_entropy(bloch_state(0.0), sigma_z_basis()) - kLn2) <
          1e-10);

    // Pure state aligned with one basis vector of a rotated qutrit basis:
    // Delta is rank one on exactly the state's ray.
    Matrix basis3(3, 3);
    const double s = 1.0 / std::numbers::sqrt2;
    basis3 << s, s, 0, s, -s, 0, 0, 0, 1;
    Vector psi(3);
    psi << s, s, 0;
    CHECK(coherence_via_relative_entropy(DensityMatrix(PureState(psi)),
                                         ProjectiveMeasurement(basis3)) == doctest::Approx(0.0));
}

TEST_CASE("ensemble_coherence: diagonal ensembles, antipodal pairs") {
    Matrix up = Matrix::Zero(2, 2), down = Matrix::Zero(2, 2);
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    const Ensemble diag({{0.0, 0.25, DensityMatrix(up)}, {1.0, 0.75, DensityMatrix(down)}});
    CHECK(std::abs(ensemble_coherence(diag, sigma_z_basis())) < 1e-12);

    const Ensemble antipodal = two_state_ensemble(std::numbers::pi);
    // Along z no information is gained, and the coherence equals chi = log 2.
    CHECK(std::abs(ensemble_coherence(antipodal, sigma_z_basis()) - kLn2) < 1e-12);
    // Along x both states are basis states.
    CHECK(std::abs(ensemble_coherence(antipodal, sigma_x_basis())) < 1e-12);
}

TEST_CASE("cxi_residual vanishes for specific and random ensembles") {
    Matrix up = Matrix::Zero(2, 2), down = Matrix::Zero(2, 2);
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    const Ensemble diag({{0.0, 0.5, DensityMatrix(up)}, {1.0, 0.5, DensityMatrix(down)}});
    CHECK(std::abs(cxi_residual(diag, sigma_z_basis())) < 1e-12);

    const Ensemble half = two_state_ensemble(std::numbers::pi / 2);
    CHECK(std::abs(cxi_residual(half, basis_at_polar(std::numbers::pi / 3))) < 1e-9);

    Rng rng = make_rng(8103);
    double max_residual = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(uniform01(rng) * 3);
        const std::size_t n_states = 2 + static_cast<std::size_t>(uniform01(rng) * 4);
        const Ensemble e = random_ensemble(dim, n_states, rng);
        const ProjectiveMeasurement basis = random_projective_measurement(dim, rng);
        max_residual = std::max(max_residual, std::abs(cxi_residual(e, basis)));
    }
    CHECK(max_residual < 1e-9);
}

TEST_CASE("information quantities stay inside their bounds") {
    Rng rng = make_rng(8104);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(uniform01(rng) * 2);
        const Ensemble e = random_ensemble(dim, 3, rng);
        const ProjectiveMeasurement basis = random_projective_measurement(dim, rng);

        const double chi = holevo_information(e);
        const double h_phi = shannon_entropy(e.label_distribution());
        CHECK(chi >= -1e-9);
        CHECK(chi <= h_phi + 1e-9);

        const double info = mutual_information(e, basis);
        const double h_m = shannon_entropy(measurement_probabilities(ensemble_state(e), basis));
        CHECK(info >= -1e-9);
        CHECK(info <= std::min(h_phi, h_m) + 1e-9);

        CHECK(ensemble_coherence(e, basis) >= -1e-9);
    }
}

TEST_CASE("permuting ensemble entries does not move any output") {
    Rng rng = make_rng(8105);
    const Ensemble e = random_ensemble(3, 5, rng);
    const ProjectiveMeasurement basis = random_projective_measurement(3, rng);

    std::vector<EnsembleEntry> shuffled(e.entries());
    std::mt19937 shuffle_rng(17);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(shuffled.begin(), shuffled.end(), shuffle_rng);
        const Ensemble permuted(shuffled);
        CHECK(std::abs(holevo_information(permuted) - holevo_information(e)) < 1e-12);
        CHECK(std::abs(ensemble_coherence(permuted, basis) - ensemble_coherence(e, basis)) < 1e-12);
        CHECK(std::abs(mutual_information(permuted, basis) - mutual_information(e, basis)) < 1e-12);
        CHECK((ensemble_state(permuted).matrix() - ensemble_state(e).matrix())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
}

TEST_CASE("duplicate labels are distinct entries") {
    const Ensemble dupes({{1.0, 0.5, bloch_state(0.0)}, {1.0, 0.5, bloch_state(std::numbers::pi)}});
    CHECK(std::abs(holevo_information(dupes) - kLn2) < 1e-12);
    CHECK(std::abs(shannon_entropy(dupes.label_distribution()) - kLn2) < 1e-12);
}

TEST_CASE("dimension mismatches are rejected across the module") {
    const Ensemble e = two_state_ensemble(1.0);
    const ProjectiveMeasurement qutrit = ProjectiveMeasurement::computational(3);
    CHECK_THROWS_AS(conditional_measurement_entropy(e, qutrit), DimensionMismatch);
    CHECK_THROWS_AS(mutual_information(e, qutrit), DimensionMismatch);
    CHECK_THROWS_AS(ensemble_coherence(e, qutrit), DimensionMismatch);
    CHECK_THROWS_AS(cxi_residual(e, qutrit), DimensionMismatch);
}
