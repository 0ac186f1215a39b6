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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

namespace cxi {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Convert an entropy value from nats to bits.
inline double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

/// Neumaier compensated summation. Keeps the running error term so the
/// result is insensitive to summation order well below 1e-12.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Entrywise compensated accumulation of weighted complex matrices.
class CompensatedMatrixSum {
  public:
    explicit CompensatedMatrixSum(Eigen::Index rows, Eigen::Index cols)
        : sum_(Matrix::Zero(rows, cols)), comp_(Matrix::Zero(rows, cols)) {}

    void add(const Matrix& term) {
        for (Eigen::Index j = 0; j < sum_.cols(); ++j) {
            for (Eigen::Index i = 0; i < sum_.rows(); ++i) {
                accumulate(sum_(i, j), comp_(i, j), term(i, j));
            }
        }
    }

    Matrix value() const { return sum_ + comp_; }

  private:
    static void accumulate(Complex& sum, Complex& comp, Complex x) {
        double sr = sum.real(), cr = comp.real();
        double si = sum.imag(), ci = comp.imag();
        accumulate1(sr, cr, x.real());
        accumulate1(si, ci, x.imag());
        sum = {sr, si};
        comp = {cr, ci};
    }

    static void accumulate1(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    Matrix sum_;
    Matrix comp_;
};

}  // namespace cxi
