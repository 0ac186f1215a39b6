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

#include "cxi/hgmetrology.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "cxi/randomgen.hpp"

namespace cxi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadAgreementTol = 1e-8;
constexpr double kOverflowRejectThreshold = 0.05;
constexpr int kMaxHgOrder = 60;
constexpr double kMarginalFloor = 1e-300;

double plogp_sum(const RealVector& p) {
    CompensatedSum s;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) s.add(-p[i] * std::log(p[i]));
    }
    return std::max(0.0, s.value());
}

}  // namespace

SourceGrid::SourceGrid(RealVector phis, ProbabilityDistribution weights)
    : phis_(std::move(phis)), weights_(std::move(weights)) {
    if (phis_.size() != weights_.size()) {
        throw DimensionMismatch("SourceGrid: phi and weight lengths differ");
    }
    if (phis_.size() < 2) throw InvalidArgument("SourceGrid: need at least two grid points");
    const double step = phis_[1] - phis_[0];
    if (step <= 0.0) throw InvariantViolation("SourceGrid: grid not strictly increasing");
    const double span = phis_[phis_.size() - 1] - phis_[0];
    for (Eigen::Index i = 1; i < phis_.size(); ++i) {
        const double d = phis_[i] - phis_[i - 1];
        if (d <= 0.0) throw InvariantViolation("SourceGrid: grid not strictly increasing");
        if (std::abs(d - step) > 1e-9 * std::max(1.0, span)) {
            throw InvariantViolation("SourceGrid: grid not equally spaced");
        }
    }
}

SourceGrid SourceGrid::with_weights(RealVector weights) const {
    return SourceGrid(phis_, ProbabilityDistribution(std::move(weights)));
}

const QuadratureRule& gauss_legendre(int n) {
    if (n < 2) throw InvalidArgument("gauss_legendre: need at least 2 nodes");
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Roots of P_n by Newton iteration from the Tricomi estimate; the rule
    // is symmetric, so only half the roots are solved for.
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // P_n(x) and P'_n(x) by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // One clean-up evaluation at the converged root.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    auto [pos, inserted] = cache.emplace(n, std::move(rule));
    (void)inserted;
    return pos->second;
}

SourceGrid default_prior() {
    constexpr int kPoints = 50;
    constexpr double kSigma = 0.25;
    RealVector phis(kPoints);
    for (int i = 0; i < kPoints / 2; ++i) {
        const double phi = -2.0 + 4.0 * i / (kPoints - 1);
        phis[i] = phi;
        phis[kPoints - 1 - i] = -phi;  // mirror so the grid is symmetric bit-for-bit
    }
    RealVector w(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        const double lo = phis[i] + 1.0;
        const double hi = phis[i] - 1.0;
        w[i] = 0.5 * (std::exp(-lo * lo / (2.0 * kSigma * kSigma)) +
                      std::exp(-hi * hi / (2.0 * kSigma * kSigma)));
    }
    w /= w.sum();
    return SourceGrid(std::move(phis), ProbabilityDistribution(std::move(w)));
}

double photon_wavefunction(double x, double phi) {
    const double d = x - phi;
    return std::pow(2.0 * kPi, -0.25) * std::exp(-d * d / 4.0);
}

namespace {

/// h_0..h_{n-1}(x) by the normalized recurrence
/// h_{q+1} = u sqrt(2/(q+1)) h_q - sqrt(q/(q+1)) h_{q-1}, u = x/(sqrt(2) sigma_h).
void hg_modes_at(double x, double sigma_h, int n_modes, double* out) {
    const double u = x / (std::numbers::sqrt2 * sigma_h);
    const double h0 = std::pow(2.0 * kPi * sigma_h * sigma_h, -0.25) * std::exp(-u * u / 2.0);
    out[0] = h0;
    if (n_modes > 1) out[1] = u * std::numbers::sqrt2 * h0;
    for (int q = 1; q + 1 < n_modes; ++q) {
        out[q + 1] = u * std::sqrt(2.0 / (q + 1)) * out[q] - std::sqrt(double(q) / (q + 1)) * out[q - 1];
    }
}

/// Overlap coefficients for all grid phis at once with an n-node rule:
/// result is n_modes x n_phi.
RealMatrix overlap_matrix(const RealVector& phis, double theta, const HgConfig& cfg, int nodes) {
    const QuadratureRule& rule = gauss_legendre(nodes);
    const Eigen::Index k = rule.nodes.size();
    RealMatrix modes(k, cfg.n_modes);
    std::vector<double> row(static_cast<std::size_t>(cfg.n_modes));
    RealVector x(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        x[i] = cfg.quad_range * rule.nodes[i];
        hg_modes_at(x[i] - theta, cfg.sigma_h, cfg.n_modes, row.data());
        for (int q = 0; q < cfg.n_modes; ++q) modes(i, q) = row[static_cast<std::size_t>(q)];
    }
    RealMatrix weighted_psi(k, phis.size());
    for (Eigen::Index j = 0; j < phis.size(); ++j) {
        for (Eigen::Index i = 0; i < k; ++i) {
            weighted_psi(i, j) = cfg.quad_range * rule.weights[i] * photon_wavefunction(x[i], phis[j]);
        }
    }
    return modes.transpose() * weighted_psi;
}

void validate_config(const HgConfig& cfg) {
    if (cfg.sigma_h <= 0.0) throw InvalidArgument("HgConfig: sigma_h must be positive");
    if (cfg.n_modes < 1) throw InvalidArgument("HgConfig: n_modes must be at least 1");
    if (cfg.n_modes - 1 > kMaxHgOrder) {
        throw InvalidArgument("HgConfig: truncation exceeds the stable recurrence ceiling (60)");
    }
    if (cfg.quad_nodes < 2 || cfg.quad_range <= 0.0) {
        throw InvalidArgument("HgConfig: invalid quadrature settings");
    }
}

RealMatrix validated_overlap_matrix(const RealVector& phis, double theta, const HgConfig& cfg) {
    const RealMatrix coarse = overlap_matrix(phis, theta, cfg, cfg.quad_nodes);
    const RealMatrix fine = overlap_matrix(phis, theta, cfg, 2 * cfg.quad_nodes);
    const double disagreement = (coarse - fine).cwiseAbs().maxCoeff();
    if (disagreement > kQuadAgreementTol) {
        std::ostringstream os;
        os << "overlap quadrature disagrees under node doubling by " << disagreement
           << " at shift " << theta;
        throw NumericError(os.str());
    }
    return fine;
}

}  // namespace

double hg_mode(int q, double x, double sigma_h) {
    if (q < 0 || q > kMaxHgOrder) {
        std::ostringstream os;
        os << "hg_mode: order " << q << " outside [0, " << kMaxHgOrder << "]";
        throw InvalidArgument(os.str());
    }
    if (sigma_h <= 0.0) throw InvalidArgument("hg_mode: sigma_h must be positive");
    std::vector<double> values(static_cast<std::size_t>(q) + 1);
    hg_modes_at(x, sigma_h, q + 1, values.data());
    return values.back();
}

RealVector overlap_coefficients(double phi, double theta, const HgConfig& cfg) {
    validate_config(cfg);
    RealVector phis(1);
    phis[0] = phi;
    RealVector c = validated_overlap_matrix(phis, theta, cfg).col(0);
    const double total = c.squaredNorm();
    if (total > 1.0 + kQuadAgreementTol) {
        std::ostringstream os;
        os << "overlap_coefficients: sum of squares " << total << " exceeds 1";
        throw NumericError(os.str());
    }
    return c;
}

MeasurementModel measurement_model(const SourceGrid& grid, double theta, const HgConfig& cfg) {
    validate_config(cfg);
    const RealMatrix coeffs = validated_overlap_matrix(grid.phis(), theta, cfg);
    const Eigen::Index n_phi = grid.size();
    MeasurementModel model;
    model.shift = theta;
    model.amplitudes.resize(cfg.n_modes + 1, n_phi);
    model.amplitudes.topRows(cfg.n_modes) = coeffs;
    for (Eigen::Index j = 0; j < n_phi; ++j) {
        const double captured = coeffs.col(j).squaredNorm();
        if (captured > 1.0 + kQuadAgreementTol) {
            throw NumericError("measurement_model: captured probability exceeds 1");
        }
        const double overflow = std::max(0.0, 1.0 - captured);
        if (overflow > kOverflowRejectThreshold) {
            std::ostringstream os;
            os << "measurement_model: truncation inadequate at shift " << theta << ", phi "
               << grid.phis()[j] << " (tail mass " << overflow << ")";
            throw InvariantViolation(os.str());
        }
        model.amplitudes(cfg.n_modes, j) = std::sqrt(overflow);
    }
    model.cond_probs = model.amplitudes.array().square();
    for (Eigen::Index j = 0; j < n_phi; ++j) {
        model.cond_probs.col(j) /= model.cond_probs.col(j).sum();
    }
    model.state_entropy.resize(n_phi);
    for (Eigen::Index j = 0; j < n_phi; ++j) {
        model.state_entropy[j] = plogp_sum(model.cond_probs.col(j));
    }
    return model;
}

Ensemble hg_ensemble(const SourceGrid& prior, double theta, const HgConfig& cfg) {
    const MeasurementModel model = measurement_model(prior, theta, cfg);
    std::vector<EnsembleEntry> entries;
    entries.reserve(static_cast<std::size_t>(prior.size()));
    for (Eigen::Index j = 0; j < prior.size(); ++j) {
        Vector amps = model.amplitudes.col(j).cast<Complex>();
        amps /= amps.norm();  // unit to the last bit
        entries.push_back(
            {prior.phis()[j], prior.weights()[j], DensityMatrix(PureState(std::move(amps)))});
    }
    return Ensemble(std::move(entries));
}

namespace {

/// Coherence and chi of the embedded ensemble from the real amplitude
/// matrix; the states are pure, so the average state coherence is the mean
/// conditional outcome entropy.
struct CoherenceChi {
    double coherence;
    double chi;
};

CoherenceChi hg_coherence_chi(const MeasurementModel& model, const RealVector& weights,
                              Eigen::SelfAdjointEigenSolver<RealMatrix>& solver) {
    const double h_cond = model.state_entropy.dot(weights);
    const RealVector p_m = model.cond_probs * weights;
    const RealMatrix rho =
        model.amplitudes * weights.asDiagonal() * model.amplitudes.transpose();
    solver.compute(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("hg coherence: eigensolver failed to converge");
    }
    CompensatedSum s;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()[i];
        // The 1e-14 floor discards eigensolver noise on rank-deficient
        // ensemble states (single-hypothesis posteriors must give exactly
        // zero coherence so the shift tie-break rule decides).
        if (lambda > 1e-14) s.add(-lambda * std::log(lambda));
    }
    const double s_rho = std::max(0.0, s.value());
    const double coherence = h_cond - (plogp_sum(p_m) - s_rho);
    return {coherence, s_rho};
}

}  // namespace

double hg_ensemble_coherence(const MeasurementModel& model, const RealVector& weights) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
    return hg_coherence_chi(model, weights, solver).coherence;
}

double hg_holevo_information(const MeasurementModel& model, const RealVector& weights) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
    return hg_coherence_chi(model, weights, solver).chi;
}

std::vector<CoherencePoint> coherence_vs_shift(const SourceGrid& prior,
                                               const std::vector<double>& thetas,
                                               const HgConfig& cfg) {
    std::vector<CoherencePoint> out;
    out.reserve(thetas.size());
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
    for (double theta : thetas) {
        const MeasurementModel model = measurement_model(prior, theta, cfg);
        const CoherenceChi cc = hg_coherence_chi(model, prior.weights().weights(), solver);
        out.push_back({theta, cc.coherence, cc.chi});
    }
    return out;
}

std::vector<double> shift_grid(double lo, double hi, double step) {
    if (step <= 0.0 || hi < lo) throw InvalidArgument("shift_grid: invalid range");
    std::vector<double> out;
    const int n = static_cast<int>(std::round((hi - lo) / step));
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) out.push_back(lo + i * step);
    return out;
}

std::vector<std::size_t> local_minima(const std::vector<double>& values) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] < values[i - 1] && values[i] < values[i + 1]) out.push_back(i);
    }
    return out;
}

SourceGrid bayes_update(const SourceGrid& grid, const MeasurementModel& model,
                        Eigen::Index outcome) {
    if (model.n_phis() != grid.size()) {
        throw DimensionMismatch("bayes_update: model and grid sizes differ");
    }
    if (outcome < 0 || outcome >= model.n_outcomes()) {
        throw InvalidArgument("bayes_update: outcome index out of range");
    }
    RealVector posterior =
        model.cond_probs.row(outcome).transpose().cwiseProduct(grid.weights().weights());
    const double marginal = posterior.sum();
    if (marginal < kMarginalFloor) {
        std::ostringstream os;
        os << "bayes_update: outcome " << outcome << " has zero marginal probability";
        throw InvalidArgument(os.str());
    }
    posterior /= marginal;
    return grid.with_weights(std::move(posterior));
}

double mmse_estimate(const SourceGrid& grid) {
    CompensatedSum s;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        s.add(grid.phis()[i] * grid.weights()[i]);
    }
    const double lo = grid.phis()[0];
    const double hi = grid.phis()[grid.size() - 1];
    return std::clamp(s.value(), lo, hi);
}

double sequence_error(const SourceGrid& posterior, double estimate) {
    CompensatedSum s;
    for (Eigen::Index i = 0; i < posterior.size(); ++i) {
        const double d = estimate - posterior.phis()[i];
        s.add(d * d * posterior.weights()[i]);
    }
    return std::max(0.0, s.value());
}

namespace {

/// Argmin of the coherence over precomputed shift models, with the
/// (|theta| ascending, then negative-first) tie break.
std::size_t best_shift_index(const std::vector<MeasurementModel>& models,
                             const RealVector& weights,
                             Eigen::SelfAdjointEigenSolver<RealMatrix>& solver) {
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < models.size(); ++i) {
        const double value = hg_coherence_chi(models[i], weights, solver).coherence;
        const double theta = models[i].shift;
        const double best_theta = models[best].shift;
        const bool better =
            value < best_value ||
            (value == best_value && (std::abs(theta) < std::abs(best_theta) ||
                                     (std::abs(theta) == std::abs(best_theta) &&
                                      theta < best_theta)));
        if (better) {
            best = i;
            best_value = value;
        }
    }
    return best;
}

}  // namespace

double choose_adaptive_shift(const SourceGrid& grid, const HgConfig& cfg, double bound,
                             double step) {
    if (bound <= 0.0) throw InvalidArgument("choose_adaptive_shift: bound must be positive");
    std::vector<MeasurementModel> models;
    for (double theta : shift_grid(-bound, bound, step)) {
        models.push_back(measurement_model(grid, theta, cfg));
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
    return models[best_shift_index(models, grid.weights().weights(), solver)].shift;
}

std::vector<StrategyRun> simulate_amse(const SimulationConfig& cfg, const SourceGrid& prior,
                                       const HgConfig& hg_cfg,
                                       const std::vector<ShiftStrategy>& strategies) {
    if (cfg.n_sequences < 1 || cfg.n_measurements < 1) {
        throw InvalidArgument("simulate_amse: sequence and measurement counts must be positive");
    }
    const bool any_adaptive =
        std::any_of(strategies.begin(), strategies.end(),
                    [](const ShiftStrategy& s) { return s.kind == ShiftStrategyKind::kAdaptive; });

    // All shift models are shared, immutable inputs of the parallel map.
    std::vector<MeasurementModel> grid_models;
    if (any_adaptive) {
        for (double theta : shift_grid(-cfg.adaptive_bound, cfg.adaptive_bound, cfg.adaptive_step)) {
            grid_models.push_back(measurement_model(prior, theta, hg_cfg));
        }
    }
    std::map<double, MeasurementModel> constant_models;
    for (const auto& strategy : strategies) {
        if (strategy.kind == ShiftStrategyKind::kConstant &&
            constant_models.find(strategy.shift) == constant_models.end()) {
            constant_models.emplace(strategy.shift, measurement_model(prior, strategy.shift, hg_cfg));
        }
    }

    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cfg.n_sequences));

    std::vector<StrategyRun> runs;
    for (const auto& strategy : strategies) {
        RealMatrix errors(cfg.n_sequences, cfg.n_measurements);
        const MeasurementModel* constant_model =
            strategy.kind == ShiftStrategyKind::kConstant ? &constant_models.at(strategy.shift)
                                                          : nullptr;

        auto run_sequence = [&](int seq, Eigen::SelfAdjointEigenSolver<RealMatrix>& solver) {
            Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(seq));
            const Eigen::Index true_phi = sample_index(prior.weights().weights(), rng);
            RealVector posterior = prior.weights().weights();
            for (int k = 0; k < cfg.n_measurements; ++k) {
                const MeasurementModel& model =
                    constant_model ? *constant_model
                                   : grid_models[best_shift_index(grid_models, posterior, solver)];
                const Eigen::Index outcome = sample_index(model.cond_probs.col(true_phi), rng);
                posterior = posterior.cwiseProduct(model.cond_probs.row(outcome).transpose());
                const double marginal = posterior.sum();
                if (marginal < kMarginalFloor) {
                    throw NumericError("simulate_amse: posterior collapsed to zero mass");
                }
                posterior /= marginal;
                CompensatedSum mean;
                for (Eigen::Index i = 0; i < posterior.size(); ++i) {
                    mean.add(prior.phis()[i] * posterior[i]);
                }
                const double estimate = mean.value();
                CompensatedSum err;
                for (Eigen::Index i = 0; i < posterior.size(); ++i) {
                    const double d = estimate - prior.phis()[i];
                    err.add(d * d * posterior[i]);
                }
                errors(seq, k) = std::max(0.0, err.value());
            }
        };

        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> worker_errors(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            workers.emplace_back([&, t] {
                Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
                try {
                    for (int seq = next.fetch_add(1); seq < cfg.n_sequences;
                         seq = next.fetch_add(1)) {
                        run_sequence(seq, solver);
                    }
                } catch (...) {
                    worker_errors[t] = std::current_exception();
                }
            });
        }
        for (auto& w : workers) w.join();
        for (const auto& err : worker_errors) {
            if (err) std::rethrow_exception(err);
        }

        // Deterministic reduction in sequence order.
        AmseCurve curve;
        curve.mean.resize(cfg.n_measurements);
        curve.variance.resize(cfg.n_measurements);
        for (int k = 0; k < cfg.n_measurements; ++k) {
            CompensatedSum mean;
            for (int seq = 0; seq < cfg.n_sequences; ++seq) mean.add(errors(seq, k));
            const double mu = mean.value() / cfg.n_sequences;
            CompensatedSum var;
            for (int seq = 0; seq < cfg.n_sequences; ++seq) {
                const double d = errors(seq, k) - mu;
                var.add(d * d);
            }
            curve.mean[k] = mu;
            curve.variance[k] = std::max(0.0, var.value() / cfg.n_sequences);
        }
        runs.push_back({strategy, std::move(errors), std::move(curve)});
    }
    return runs;
}

}  // namespace cxi
