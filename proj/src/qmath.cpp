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

#include "cxi/qmath.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace cxi {

namespace {

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

void require_square(const Matrix& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a nonempty square matrix, got " << a.rows() << "x" << a.cols();
        throw InvalidArgument(os.str());
    }
}

}  // namespace

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) throw InvalidArgument("PureState: empty amplitude vector");
    if (!amplitudes_.allFinite()) throw InvariantViolation("PureState: non-finite amplitude");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kHermitianTol) {
        std::ostringstream os;
        os << "PureState: norm deviates from 1 by " << std::abs(norm - 1.0);
        throw InvariantViolation(os.str());
    }
}

DensityMatrix::DensityMatrix(Matrix matrix) : matrix_(std::move(matrix)) {
    require_square(matrix_, "DensityMatrix");
    if (!matrix_.allFinite()) throw InvariantViolation("DensityMatrix: non-finite entry");
    const double asym = max_abs(matrix_ - matrix_.adjoint());
    if (asym > kHermitianTol) {
        std::ostringstream os;
        os << "DensityMatrix: ||A - A^dagger||_max = " << asym << " exceeds " << kHermitianTol;
        throw InvariantViolation(os.str());
    }
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());
    const double trace_dev = std::abs(matrix_.trace().real() - 1.0) + std::abs(matrix_.trace().imag());
    if (trace_dev > kTraceTol) {
        std::ostringstream os;
        os << "DensityMatrix: trace deviates from 1 by " << trace_dev;
        throw InvariantViolation(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("DensityMatrix: eigensolver failed to converge");
    }
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < kEigenvalueFloor) {
        std::ostringstream os;
        os << "DensityMatrix: eigenvalue " << min_eig << " below " << kEigenvalueFloor;
        throw InvariantViolation(os.str());
    }
}

ProjectiveMeasurement::ProjectiveMeasurement(Matrix basis) : basis_(std::move(basis)) {
    require_square(basis_, "ProjectiveMeasurement");
    const Matrix gram = basis_.adjoint() * basis_;
    const double dev = max_abs(gram - Matrix::Identity(basis_.rows(), basis_.cols()));
    if (dev > kOrthonormalTol) {
        std::ostringstream os;
        os << "ProjectiveMeasurement: basis orthonormality residual " << dev;
        throw InvariantViolation(os.str());
    }
    // For a square matrix U^dagger U = I also gives U U^dagger = I, i.e. the
    // projectors resolve the identity.
}

ProjectiveMeasurement::ProjectiveMeasurement(const std::vector<PureState>& states)
    : ProjectiveMeasurement([&states] {
          if (states.empty()) throw InvalidArgument("ProjectiveMeasurement: no basis states");
          Matrix b(states.front().dim(), static_cast<Eigen::Index>(states.size()));
          for (Eigen::Index m = 0; m < b.cols(); ++m) {
              const auto& s = states[static_cast<std::size_t>(m)];
              if (s.dim() != b.rows()) {
                  throw DimensionMismatch("ProjectiveMeasurement: basis states of unequal dimension");
              }
              b.col(m) = s.amplitudes();
          }
          return b;
      }()) {}

Matrix ProjectiveMeasurement::projector(Eigen::Index m) const {
    return basis_.col(m) * basis_.col(m).adjoint();
}

ProjectiveMeasurement ProjectiveMeasurement::computational(Eigen::Index dim) {
    return ProjectiveMeasurement(Matrix::Identity(dim, dim));
}

ProbabilityDistribution::ProbabilityDistribution(RealVector weights) : weights_(std::move(weights)) {
    if (weights_.size() == 0) throw InvalidArgument("ProbabilityDistribution: empty");
    if (!weights_.allFinite()) throw InvariantViolation("ProbabilityDistribution: non-finite weight");
    if (weights_.minCoeff() < 0.0) {
        std::ostringstream os;
        os << "ProbabilityDistribution: negative weight " << weights_.minCoeff();
        throw InvariantViolation(os.str());
    }
    const double sum = weights_.sum();
    if (std::abs(sum - 1.0) > kProbabilitySumTol) {
        std::ostringstream os;
        os << "ProbabilityDistribution: weights sum to " << sum;
        throw InvariantViolation(os.str());
    }
}

Eigensystem hermitian_eigensystem(const Matrix& a) {
    require_square(a, "hermitian_eigensystem");
    const double asym = max_abs(a - a.adjoint());
    if (asym > kHermitianTol) {
        std::ostringstream os;
        os << "hermitian_eigensystem: ||A - A^dagger||_max = " << asym << " exceeds "
           << kHermitianTol;
        throw InvariantViolation(os.str());
    }
    const Matrix sym = 0.5 * (a + a.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericError("hermitian_eigensystem: eigensolver failed to converge");
    }
    return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

double entropy_of_spectrum(const RealVector& eigenvalues, const char* what) {
    CompensatedSum s;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        double lambda = eigenvalues[i];
        if (lambda < kEigenvalueFloor) {
            std::ostringstream os;
            os << what << ": eigenvalue " << lambda << " below " << kEigenvalueFloor;
            throw InvariantViolation(os.str());
        }
        if (lambda <= 0.0) continue;  // clamp window [-1e-10, 0] -> 0
        s.add(-lambda * std::log(lambda));
    }
    return std::max(0.0, s.value());
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("von_neumann_entropy: eigensolver failed to converge");
    }
    return entropy_of_spectrum(solver.eigenvalues(), "von_neumann_entropy");
}

double shannon_entropy(const ProbabilityDistribution& p) { return shannon_entropy(p.weights()); }

double shannon_entropy(const RealVector& weights) {
    return entropy_of_spectrum(weights, "shannon_entropy");
}

namespace {

RealVector diagonal_in_basis(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
    if (rho.dim() != m.dim()) {
        throw DimensionMismatch("state and measurement dimensions differ");
    }
    // <m|rho|m> for every basis column at once.
    const Matrix rotated = m.basis().adjoint() * rho.matrix() * m.basis();
    RealVector p = rotated.diagonal().real();
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 && p[i] >= kEigenvalueFloor) p[i] = 0.0;
    }
    return p;
}

}  // namespace

DensityMatrix decohere(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
    const RealVector p = diagonal_in_basis(rho, m);
    const Matrix delta = m.basis() * p.asDiagonal() * m.basis().adjoint();
    return DensityMatrix(delta);
}

ProbabilityDistribution measurement_probabilities(const DensityMatrix& rho,
                                                  const ProjectiveMeasurement& m) {
    return ProbabilityDistribution(diagonal_in_basis(rho, m));
}

}  // namespace cxi
