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
#include <vector>

#include "cxi/discrimination.hpp"

using namespace cxi;

namespace {

const double kPi = std::numbers::pi;
const double kLn2 = std::numbers::ln2;

double overlap(const PureState& a, const PureState& b) {
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// Pauli-expansion oracle: the projectors of the basis along d must be
/// (I +- d.sigma)/2.
Matrix pauli_projector(const std::array<double, 3>& n, double sign) {
    Matrix sigma_x(2, 2), sigma_y(2, 2), sigma_z(2, 2);
    sigma_x << 0, 1, 1, 0;
    sigma_y << 0, Complex(0, -1), Complex(0, 1), 0;
    sigma_z << 1, 0, 0, -1;
    return 0.5 * (Matrix::Identity(2, 2) +
                  sign * (n[0] * sigma_x + n[1] * sigma_y + n[2] * sigma_z));
}

/// Ranks without ties (values are strictly monotone on our grids).
std::vector<std::size_t> ranks(const std::vector<double>& values) {
    std::vector<std::size_t> idx(values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::size_t> rank(values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) rank[idx[i]] = i;
    return rank;
}

}  // namespace

TEST_CASE("rotated_state: endpoints and overlaps") {
    const PureState up_x = rotated_state(0.0);
    CHECK(std::abs(up_x.amplitudes()[0].real() - 1.0 / std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(up_x.amplitudes()[1].real() - 1.0 / std::numbers::sqrt2) < 1e-15);

    const PureState down_x = rotated_state(kPi);
    CHECK(std::abs(overlap(up_x, down_x)) < 1e-15);

    CHECK(std::abs(overlap(up_x, rotated_state(kPi / 2)) - 0.5) < 1e-14);
}

TEST_CASE("basis_from_direction: poles, x axis, Pauli expansion oracle") {
    const ProjectiveMeasurement z = basis_from_direction({0.0, 0.0});
    CHECK((z.basis() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

    const ProjectiveMeasurement x = basis_from_direction({kPi / 2, 0.0});
    CHECK(std::abs(std::abs(x.state(0).dot(rotated_state(0.0).amplitudes())) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(x.state(1).dot(rotated_state(kPi).amplitudes())) - 1.0) < 1e-12);

    for (const BlochDirection dir : {BlochDirection{1.1, 0.7}, BlochDirection{2.4, 4.0},
                                     BlochDirection{0.3, 5.9}}) {
        const ProjectiveMeasurement basis = basis_from_direction(dir);
        const auto n = dir.unit_vector();
        CHECK((basis.projector(0) - pauli_projector(n, +1.0)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((basis.projector(1) - pauli_projector(n, -1.0)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("coherence_landscape: orthogonal-state endpoints") {
    const DiscriminationProblem problem(kPi);
    const auto samples = coherence_landscape(problem, 19, 12);
    CHECK(samples.size() == 19 * 12);

    for (const auto& s : samples) {
        CHECK(s.normalized >= -1e-9);
        CHECK(s.normalized <= 1.0 + 1e-9);
    }

    // Basis along x (polar pi/2, azimuth 0) discriminates perfectly; the
    // poles (sigma_z basis) provide nothing.
    const auto at = [&](int i, int j) -> const LandscapeSample& {
        return samples[static_cast<std::size_t>(i) * 12 + static_cast<std::size_t>(j)];
    };
    CHECK(std::abs(at(9, 0).normalized) < 1e-12);   // polar = pi/2, azimuth 0
    CHECK(std::abs(at(0, 0).normalized - 1.0) < 1e-12);
    CHECK(std::abs(at(18, 0).normalized - 1.0) < 1e-12);
}

TEST_CASE("coherence_landscape: mirror symmetry across the problem plane") {
    const DiscriminationProblem problem(kPi / 2);
    const int n_polar = 13, n_azimuth = 16;
    const auto samples = coherence_landscape(problem, n_polar, n_azimuth);
    for (int i = 0; i < n_polar; ++i) {
        for (int j = 1; j < n_azimuth; ++j) {
            const auto& a = samples[static_cast<std::size_t>(i) * n_azimuth + j];
            const auto& b =
                samples[static_cast<std::size_t>(i) * n_azimuth + (n_azimuth - j)];
            CHECK(std::abs(a.coherence - b.coherence) < 1e-9);
        }
    }
}

TEST_CASE("landscape argmin is invariant under normalization") {
    const DiscriminationProblem problem(kPi / 2);
    const auto samples = coherence_landscape(problem, 61, 31);
    const auto& best = landscape_argmin(samples);
    std::size_t best_normalized = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].normalized < samples[best_normalized].normalized) best_normalized = i;
    }
    CHECK(&samples[best_normalized] == &best);
}

TEST_CASE("helstrom_basis: orthogonal case and the analytic optimum angle") {
    // theta = pi: success probability 1.
    CHECK(projective_success_probability(kPi) == doctest::Approx(1.0));

    // theta = pi/2: basis direction at angle 3*pi/4 from the x axis.
    const ProjectiveMeasurement basis = helstrom_basis(kPi / 2);
    const PureState expected = rotated_state(kPi / 2 / 2 + kPi / 2);
    CHECK(std::abs(std::abs(basis.state(1).dot(expected.amplitudes())) - 1.0) < 1e-12);

    // Grid-search oracle: the analytic direction sits within one cell of the
    // landscape argmin for a grid aligned with the problem plane.
    for (double theta : {kPi / 10, kPi / 2}) {
        const DiscriminationProblem problem(theta);
        const auto samples = coherence_landscape(problem, 181, 91);
        const auto& best = landscape_argmin(samples);
        const auto v = best.direction.unit_vector();
        // Analytic optimum: x-z plane direction at angle theta/2 + pi/2.
        const double alpha = theta / 2 + kPi / 2;
        const double dot =
            std::abs(v[0] * std::cos(alpha) + v[2] * std::sin(alpha));  // axis vs axis
        CHECK(std::acos(std::min(1.0, dot)) < 1.5 * kPi / 180.0);
    }
}

TEST_CASE("golden-section refinement agrees with the analytic Helstrom angle") {
    for (double theta : {kPi / 10, kPi / 2, 0.8 * kPi}) {
        const DiscriminationProblem problem(theta);
        const double numeric = refine_min_coherence_angle(problem);
        double analytic = std::fmod(theta / 2 + kPi / 2, kPi);
        double diff = std::abs(numeric - analytic);
        diff = std::min(diff, kPi - diff);  // the basis has period pi
        CHECK(diff < 1e-6);

        // And the helstrom basis coherence is no worse than a dense scan.
        const double at_helstrom = ensemble_coherence(discrimination_ensemble(problem),
                                                      helstrom_basis(theta));
        const auto samples = coherence_landscape(problem, 91, 45);
        for (const auto& s : samples) {
            CHECK(at_helstrom <= s.coherence + 1e-9);
        }
    }
}

TEST_CASE("usd_povm: effects, positivity, and the unsure-rate pattern") {
    CHECK_THROWS_AS(usd_povm(0.0), InvalidArgument);

    // theta = pi: the unsure effect vanishes and discrimination is perfect.
    const auto eff_pi = effects(usd_povm(kPi));
    CHECK(eff_pi[2].cwiseAbs().maxCoeff() < 1e-12);

    for (double theta : {kPi / 10, kPi / 3, kPi / 2, 0.9 * kPi}) {
        const Povm usd = usd_povm(theta);
        const auto eff = effects(usd);
        // Unambiguous outcomes never fire on the wrong state.
        CHECK((eff[0] * rotated_state(theta).projector()).trace().real() < 1e-12);
        CHECK((eff[1] * rotated_state(0.0).projector()).trace().real() < 1e-12);
        // Smallest eigenvalue of the unsure effect stays non-negative.
        const Eigensystem eig = hermitian_eigensystem(eff[2]);
        CHECK(eig.eigenvalues[0] >= -1e-10);

        // p_? follows cos(theta/2) for the equal mixture.
        const DensityMatrix mixture(
            0.5 * (rotated_state(0.0).projector() + rotated_state(theta).projector()));
        const double p_unsure = povm_probabilities(mixture, usd).weights()[2];
        CHECK(std::abs(p_unsure - std::cos(theta / 2)) < 1e-10);
    }
}

TEST_CASE("success probabilities: endpoints, oracle, and ordering") {
    CHECK(projective_success_probability(0.0) == doctest::Approx(0.5));
    CHECK(projective_success_probability(kPi) == doctest::Approx(1.0));
    CHECK(usd_success_probability(kPi) == doctest::Approx(1.0));

    // Brute-force maximization over a fine basis grid at theta = pi/2.
    const double theta = kPi / 2;
    double best = 0.0;
    const Matrix rho0 = rotated_state(0.0).projector();
    const Matrix rho1 = rotated_state(theta).projector();
    for (int i = 0; i < 3600; ++i) {
        const double alpha = kPi * i / 3600.0;
        const Matrix p0 = rotated_state(alpha - kPi).projector();
        const Matrix p1 = rotated_state(alpha).projector();
        const double a = 0.5 * ((p0 * rho0).trace().real() + (p1 * rho1).trace().real());
        const double b = 0.5 * ((p1 * rho0).trace().real() + (p0 * rho1).trace().real());
        best = std::max({best, a, b});
    }
    CHECK(std::abs(projective_success_probability(theta) - best) < 1e-6);
    CHECK(std::abs(projective_success_probability(theta) - 0.8535533905932738) < 1e-12);
    CHECK(std::abs(usd_success_probability(theta) - 0.6464466094067262) < 1e-12);

    // Monotone in theta, and USD never beats the optimal projective scheme.
    double previous = 0.49;
    for (int i = 1; i <= 50; ++i) {
        const double t = kPi * i / 50.0;
        const double ps = projective_success_probability(t);
        CHECK(ps >= previous - 1e-12);
        CHECK(ps >= 0.5 - 1e-12);
        CHECK(ps <= 1.0 + 1e-12);
        CHECK(usd_success_probability(t) <= ps + 1e-9);
        previous = ps;
    }
}

TEST_CASE("coherence_vs_theta_report: endpoint rows and CXI residuals") {
    std::vector<double> grid;
    for (int i = 1; i <= 25; ++i) grid.push_back(kPi * i / 25.0);
    const auto rows = coherence_vs_theta_report(grid);
    REQUIRE(rows.size() == grid.size());

    const auto& last = rows.back();  // theta = pi
    CHECK(std::abs(last.chi - kLn2) < 1e-12);
    CHECK(std::abs(last.projective_norm_coherence) < 1e-9);
    CHECK(std::abs(last.usd_norm_coherence) < 1e-9);
    CHECK(std::abs(last.projective_error) < 1e-12);
    CHECK(std::abs(last.usd_error) < 1e-12);

    for (const auto& row : rows) {
        // POVM loses at least as much information as the optimal projective
        // basis, and the small-separation rows keep a sizeable fraction of
        // chi locked away.
        CHECK(row.usd_norm_coherence >= row.projective_norm_coherence - 1e-9);
        CHECK(row.usd_error >= row.projective_error - 1e-9);

        const DiscriminationProblem problem(row.theta);
        const Ensemble e = discrimination_ensemble(problem);
        CHECK(std::abs(cxi_residual(e, helstrom_basis(row.theta))) < 1e-9);
        CHECK(std::abs(povm_cxi_residual(e, usd_povm(row.theta))) < 1e-9);
    }
    CHECK(rows.front().projective_norm_coherence > 0.3);  // theta = pi/25

    // Error and normalized coherence are co-monotone across the grid
    // (identical rank vectors, Spearman correlation one).
    std::vector<double> proj_err, proj_coh, usd_err, usd_coh;
    for (const auto& row : rows) {
        proj_err.push_back(row.projective_error);
        proj_coh.push_back(row.projective_norm_coherence);
        usd_err.push_back(row.usd_error);
        usd_coh.push_back(row.usd_norm_coherence);
    }
    CHECK(ranks(proj_err) == ranks(proj_coh));
    CHECK(ranks(usd_err) == ranks(usd_coh));
}

TEST_CASE("problem construction validates theta") {
    CHECK_THROWS_AS(DiscriminationProblem(-0.1), InvalidArgument);
    CHECK_THROWS_AS(DiscriminationProblem(3.3), InvalidArgument);
    CHECK_THROWS_AS(coherence_landscape(DiscriminationProblem(1.0), 1, 5), InvalidArgument);
}
