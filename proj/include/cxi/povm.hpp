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

#include "cxi/infotheory.hpp"
#include "cxi/qmath.hpp"

namespace cxi {

inline constexpr double kPovmCompletenessTol = 1e-9;

/// Generalized measurement stored as Kraus operators {M_j} with
/// sum_j M_j^dagger M_j = I. Effect-specified measurements are imported
/// through from_effects, which takes the positive square root of each
/// effect; this reproduces the same outcome statistics.
class Povm {
  public:
    explicit Povm(std::vector<Matrix> kraus);

    /// Skips the completeness check. Exists so verification harnesses can
    /// inject known-bad measurements; not for regular use.
    static Povm unvalidated(std::vector<Matrix> kraus);

    /// Import Hermitian PSD effects {E_j} as Kraus operators E_j^(1/2).
    static Povm from_effects(const std::vector<Matrix>& effects);

    Eigen::Index dim() const { return kraus_.front().rows(); }
    std::size_t n_outcomes() const { return kraus_.size(); }
    const std::vector<Matrix>& kraus() const { return kraus_; }

    /// Residual ||sum M^dagger M - I||_max of the completeness relation.
    double completeness_residual() const;

  private:
    struct Unchecked {};
    Povm(std::vector<Matrix> kraus, Unchecked);

    std::vector<Matrix> kraus_;
};

/// Naimark dilation of a POVM: isometry V = sum_j M_j (x) |j> into the
/// system-ancilla space, with basis index s*N + j (system major).
class NaimarkDilation {
  public:
    explicit NaimarkDilation(const Povm& p);

    const Matrix& isometry() const { return isometry_; }
    Eigen::Index system_dim() const { return system_dim_; }
    std::size_t n_outcomes() const { return n_outcomes_; }
    Eigen::Index dilated_dim() const { return isometry_.rows(); }

    /// Projector I (x) |j><j| on the dilated space.
    Matrix dilated_projector(std::size_t j) const;

    /// ||V^dagger V - I||_max.
    double isometry_residual() const;

  private:
    Matrix isometry_;
    Eigen::Index system_dim_;
    std::size_t n_outcomes_;
};

/// Effects E_j = M_j^dagger M_j.
std::vector<Matrix> effects(const Povm& p);

/// p_j = tr{rho M_j^dagger M_j}.
ProbabilityDistribution povm_probabilities(const DensityMatrix& rho, const Povm& p);

NaimarkDilation naimark_dilate(const Povm& p);

/// rho~ = V rho V^dagger.
DensityMatrix dilate_state(const DensityMatrix& rho, const NaimarkDilation& d);

/// POVM coherence: S(sum_j M~_j rho~ M~_j) - S(rho~) on the dilated space.
/// Reduces to the relative entropy of coherence for projective POVMs.
double povm_coherence(const DensityMatrix& rho, const Povm& p);

/// sum_phi p(phi) C_P(rho_phi) - C_P(rho_Phi).
double povm_ensemble_coherence(const Ensemble& e, const Povm& p);

/// I(Phi;M) for POVM outcomes.
double povm_mutual_information(const Ensemble& e, const Povm& p);

/// C_P(E) - (chi(E) - I(Phi;M)).
double povm_cxi_residual(const Ensemble& e, const Povm& p);

/// rho_j = M_j rho M_j^dagger / p_j. Rejects outcomes with p_j < 1e-12.
DensityMatrix post_measurement_state(const DensityMatrix& rho, const Povm& p, std::size_t j);

}  // namespace cxi
