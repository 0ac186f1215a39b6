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

#include "cxi/errors.hpp"
#include "cxi/numeric.hpp"

namespace cxi {

// Tolerances shared by the state/measurement types.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kProbabilitySumTol = 1e-9;

/// Normalized pure state |psi> of a d-dimensional system.
class PureState {
  public:
    explicit PureState(Vector amplitudes);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }

    /// Rank-1 projector |psi><psi|.
    Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  private:
    Vector amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite operator.
///
/// Construction symmetrizes (A + A^dagger)/2 when the asymmetry is within
/// tolerance and rejects the input otherwise, so downstream eigensolves
/// always see an exactly Hermitian matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix matrix);
    explicit DensityMatrix(const PureState& psi) : DensityMatrix(psi.projector()) {}

    Eigen::Index dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }

  private:
    Matrix matrix_;
};

/// Orthonormal measurement basis {|m>}, equivalently projectors |m><m|.
class ProjectiveMeasurement {
  public:
    /// Columns of `basis` are the measurement states.
    explicit ProjectiveMeasurement(Matrix basis);
    explicit ProjectiveMeasurement(const std::vector<PureState>& states);

    Eigen::Index dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    Vector state(Eigen::Index m) const { return basis_.col(m); }
    Matrix projector(Eigen::Index m) const;

    static ProjectiveMeasurement computational(Eigen::Index dim);

  private:
    Matrix basis_;
};

/// Non-negative weights summing to one.
class ProbabilityDistribution {
  public:
    explicit ProbabilityDistribution(RealVector weights);

    Eigen::Index size() const { return weights_.size(); }
    const RealVector& weights() const { return weights_; }
    double operator[](Eigen::Index i) const { return weights_[i]; }

  private:
    RealVector weights_;
};

struct Eigensystem {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns, orthonormal
};

/// Eigendecomposition of a Hermitian matrix. Rejects inputs whose
/// anti-Hermitian part exceeds tolerance, reporting ||A - A^dagger||_max.
Eigensystem hermitian_eigensystem(const Matrix& a);

/// S(rho) = -tr(rho log rho) in nats. Eigenvalues in [-1e-10, 0) are
/// clamped to zero; anything below that is rejected as non-physical.
double von_neumann_entropy(const DensityMatrix& rho);

/// H(p) = -sum p log p in nats, with 0 log 0 := 0.
double shannon_entropy(const ProbabilityDistribution& p);

/// Entropy of a raw non-negative weight vector (test and hot-path helper;
/// negative entries below -1e-10 are rejected).
double shannon_entropy(const RealVector& weights);

/// Delta_M[rho] = sum_m <m|rho|m> |m><m|.
DensityMatrix decohere(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// p_m = <m|rho|m>.
ProbabilityDistribution measurement_probabilities(const DensityMatrix& rho,
                                                  const ProjectiveMeasurement& m);

}  // namespace cxi
