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

#include <array>
#include <vector>

#include "cxi/infotheory.hpp"
#include "cxi/povm.hpp"
#include "cxi/qmath.hpp"

namespace cxi {

/// Measurement axis on the Bloch sphere (polar angle from +z, azimuth from
/// +x); the basis states sit at the two antipodal points of the axis.
struct BlochDirection {
    double polar;    // [0, pi]
    double azimuth;  // [0, 2*pi)

    std::array<double, 3> unit_vector() const;
};

/// Binary discrimination of the pure states at great-circle angles 0 and
/// theta, with equal priors.
struct DiscriminationProblem {
    double theta;  // [0, pi]

    explicit DiscriminationProblem(double theta_);
    static constexpr double prior = 0.5;
};

struct LandscapeSample {
    BlochDirection direction;
    double coherence;   // nats
    double normalized;  // coherence / chi
};

/// cos(theta/2)|up_x> + sin(theta/2)|down_x>. The states of the problem lie
/// on the x-z great circle; theta is the angle from the +x axis.
PureState rotated_state(double theta);

/// Orthonormal pair along +-d.
ProjectiveMeasurement basis_from_direction(const BlochDirection& d);

/// Two-entry ensemble {rho_0, rho_theta} with equal priors.
Ensemble discrimination_ensemble(const DiscriminationProblem& p);

/// Ensemble coherence sampled over every measurement axis, normalized per
/// sample by the problem's Holevo information. Samples are ordered by
/// (polar index, azimuth index); polar covers [0, pi] inclusive and azimuth
/// [0, 2*pi) exclusive.
std::vector<LandscapeSample> coherence_landscape(const DiscriminationProblem& p,
                                                 int n_polar, int n_azimuth);

/// Sample with the smallest coherence (first in sample order on ties).
const LandscapeSample& landscape_argmin(const std::vector<LandscapeSample>& samples);

/// Minimum-error basis {rho_(theta/2 - pi/2), rho_(theta/2 + pi/2)}.
ProjectiveMeasurement helstrom_basis(double theta);

/// Coherence of the measurement basis whose axis sits at great-circle angle
/// alpha (basis states at alpha and alpha - pi).
double coherence_at_angle(const DiscriminationProblem& p, double alpha);

/// Numerically locate the minimum-coherence axis in the great circle by
/// golden-section refinement after a coarse grid seed. Returns the angle in
/// [0, pi) (the basis has period pi).
double refine_min_coherence_angle(const DiscriminationProblem& p);

/// Three-outcome unambiguous-discrimination POVM (outcomes: 0, theta, ?),
/// from effects {c rho_(theta+pi), c rho_pi, I - c(rho_(theta+pi)+rho_pi)}
/// with c = 1/lambda_max(rho_pi + rho_(theta+pi)). Rejects theta = 0, where
/// the inconclusive effect is the whole identity.
Povm usd_povm(double theta);

/// Success probability of the Helstrom measurement with equal priors.
double projective_success_probability(double theta);

/// Success probability of unambiguous discrimination when an inconclusive
/// outcome is resolved by a fair coin.
double usd_success_probability(double theta);

struct DiscriminationReportRow {
    double theta;
    double chi;                      // nats
    double projective_norm_coherence;  // helstrom-basis coherence / chi
    double usd_norm_coherence;         // USD POVM coherence / chi
    double projective_error;
    double usd_error;
};

std::vector<DiscriminationReportRow> coherence_vs_theta_report(const std::vector<double>& thetas);

}  // namespace cxi
