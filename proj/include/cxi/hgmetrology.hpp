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

#include <cstdint>
#include <string>
#include <vector>

#include "cxi/infotheory.hpp"
#include "cxi/qmath.hpp"

namespace cxi {

/// Discrete hypothesis grid for the source location, with its probability
/// weights (prior or posterior).
class SourceGrid {
  public:
    SourceGrid(RealVector phis, ProbabilityDistribution weights);

    const RealVector& phis() const { return phis_; }
    const ProbabilityDistribution& weights() const { return weights_; }
    Eigen::Index size() const { return phis_.size(); }

    SourceGrid with_weights(RealVector weights) const;

  private:
    RealVector phis_;
    ProbabilityDistribution weights_;
};

/// Mode-basis configuration: mode width, truncation order, and the
/// Gauss-Legendre rule used for overlap integrals.
struct HgConfig {
    double sigma_h = 2.0;
    int n_modes = 20;
    int quad_nodes = 400;
    double quad_range = 30.0;
};

/// Outcome model p(m|phi) for a given basis shift. Outcomes 0..n_modes-1
/// are the mode indices; the last outcome collects the truncated tail.
struct MeasurementModel {
    double shift = 0.0;
    RealMatrix cond_probs;     // (n_modes+1) x n_phi, columns sum to 1
    RealMatrix amplitudes;     // same shape; overlap coefficients + overflow row
    RealVector state_entropy;  // per-phi Shannon entropy of the outcome column

    Eigen::Index n_outcomes() const { return cond_probs.rows(); }
    Eigen::Index n_phis() const { return cond_probs.cols(); }
};

enum class ShiftStrategyKind { kConstant, kAdaptive };

struct ShiftStrategy {
    std::string name;
    ShiftStrategyKind kind = ShiftStrategyKind::kConstant;
    double shift = 0.0;  // used by kConstant
};

struct SimulationConfig {
    int n_sequences = 480;
    int n_measurements = 200;
    std::uint64_t seed = 0;
    double adaptive_bound = 3.0;
    double adaptive_step = 0.1;
    int threads = 0;  // 0 = hardware concurrency
};

/// Mean and variance (over sequences) of the posterior error after each
/// measurement count k = 1..n_measurements.
struct AmseCurve {
    RealVector mean;
    RealVector variance;
};

struct StrategyRun {
    ShiftStrategy strategy;
    RealMatrix errors;  // n_sequences x n_measurements
    AmseCurve curve;
};

struct CoherencePoint {
    double theta;
    double coherence;  // nats
    double chi;        // nats
};

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct QuadratureRule {
    RealVector nodes;
    RealVector weights;
};
const QuadratureRule& gauss_legendre(int n);

/// Double-peaked default prior: fifty grid points evenly spaced on [-2, 2]
/// with weights from an equal mixture of Gaussians centered at +-1 of width
/// 0.25, normalized. The grid is mirror-exact, so weights are symmetric to
/// the last bit.
SourceGrid default_prior();

/// psi_phi(x) = (2 pi)^(-1/4) exp(-(x - phi)^2 / 4).
double photon_wavefunction(double x, double phi);

/// q-th Hermite-Gauss mode of width sigma_h, by the stable normalized
/// recurrence. Rejects q > 60.
double hg_mode(int q, double x, double sigma_h);

/// Overlap coefficients c_q = integral h_q(x - theta) psi_phi(x) dx for
/// q = 0..n_modes-1, validated by node doubling (disagreement above 1e-8
/// is rejected).
RealVector overlap_coefficients(double phi, double theta, const HgConfig& cfg);

/// Conditional outcome model at the given shift over the grid's phi values.
/// Rejects shifts whose truncated tail exceeds 5% for any phi.
MeasurementModel measurement_model(const SourceGrid& grid, double theta, const HgConfig& cfg);

/// The grid's hypotheses as pure states of the (n_modes+1)-dimensional
/// outcome space, overflow amplitude on the last axis.
Ensemble hg_ensemble(const SourceGrid& prior, double theta, const HgConfig& cfg);

/// Ensemble coherence of the model's outcome basis, specialized to the real
/// amplitudes of this module (matches the generic complex path to 1e-12).
double hg_ensemble_coherence(const MeasurementModel& model, const RealVector& weights);

/// Holevo information of the embedded ensemble.
double hg_holevo_information(const MeasurementModel& model, const RealVector& weights);

/// Coherence (and chi) of the prior's ensemble for every requested shift.
std::vector<CoherencePoint> coherence_vs_shift(const SourceGrid& prior,
                                               const std::vector<double>& thetas,
                                               const HgConfig& cfg);

/// Evenly spaced closed grid [lo, hi] with the given step.
std::vector<double> shift_grid(double lo, double hi, double step);

/// Indices of strict interior local minima of `values`.
std::vector<std::size_t> local_minima(const std::vector<double>& values);

/// Posterior after observing outcome m under the model, by Bayes' rule.
/// Rejects outcomes of (numerically) zero marginal probability.
SourceGrid bayes_update(const SourceGrid& grid, const MeasurementModel& model, Eigen::Index outcome);

/// Posterior mean, clamped to the grid's range.
double mmse_estimate(const SourceGrid& grid);

/// e(m) = sum_phi (estimate - phi)^2 p(phi|m).
double sequence_error(const SourceGrid& posterior, double estimate);

/// Shift minimizing the ensemble coherence over the search grid
/// [-bound, bound] in steps of `step`; ties break toward smaller |theta|,
/// then toward negative theta.
double choose_adaptive_shift(const SourceGrid& grid, const HgConfig& cfg, double bound,
                             double step);

/// Monte-Carlo AMSE curves: per sequence, a true phi is drawn from the
/// prior, outcomes are sampled and the posterior updated for each
/// measurement, and the posterior error is recorded after every step.
/// Sequences run as a parallel map; each owns the RNG stream
/// (cfg.seed, sequence index), so results are identical for any thread
/// count.
std::vector<StrategyRun> simulate_amse(const SimulationConfig& cfg, const SourceGrid& prior,
                                       const HgConfig& hg_cfg,
                                       const std::vector<ShiftStrategy>& strategies);

}  // namespace cxi
