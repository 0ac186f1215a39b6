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

#include <vector>

#include "cxi/qmath.hpp"

namespace cxi {

/// One hypothesis of an ensemble: a parameter value, its prior probability,
/// and the state it prepares. Labels are opaque; duplicates are allowed and
/// treated as distinct entries.
struct EnsembleEntry {
    double label;
    double probability;
    DensityMatrix state;
};

/// Ensemble E of states rho_phi carrying a classical parameter Phi.
class Ensemble {
  public:
    explicit Ensemble(std::vector<EnsembleEntry> entries);

    const std::vector<EnsembleEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    Eigen::Index dim() const { return entries_.front().state.dim(); }

    /// Distribution of the parameter (entry probabilities, in entry order).
    ProbabilityDistribution label_distribution() const;

  private:
    std::vector<EnsembleEntry> entries_;
};

/// rho_Phi = sum_phi p(phi) rho_phi.
DensityMatrix ensemble_state(const Ensemble& e);

/// chi(E) = S(rho_Phi) - sum_phi p(phi) S(rho_phi), in nats.
double holevo_information(const Ensemble& e);

/// H(M|Phi) = sum_phi p(phi) H(outcomes when measuring rho_phi).
double conditional_measurement_entropy(const Ensemble& e, const ProjectiveMeasurement& m);

/// I(Phi;M) = H(M) - H(M|Phi), with H(M) evaluated on the ensemble state.
double mutual_information(const Ensemble& e, const ProjectiveMeasurement& m);

/// C_M(rho) = S(Delta_M[rho]) - S(rho).
double relative_entropy_of_coherence(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// The same coherence evaluated as the quantum relative entropy
/// tr{rho log rho - rho log Delta_M[rho]} through two eigendecompositions.
/// Throws SupportError when Delta_M[rho] lacks support where rho has weight
/// (eigenvalue floor 1e-12); used as an independent cross-check route.
double coherence_via_relative_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// C_M(E) = sum_phi p(phi) C_M(rho_phi) - C_M(rho_Phi).
double ensemble_coherence(const Ensemble& e, const ProjectiveMeasurement& m);

/// C_M(E) - (chi(E) - I(Phi;M)), each term from its own code path.
/// Vanishes (to floating point) for every valid ensemble and basis.
double cxi_residual(const Ensemble& e, const ProjectiveMeasurement& m);

}  // namespace cxi
