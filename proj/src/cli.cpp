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

#include "cxi/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "cxi/csv.hpp"
#include "cxi/discrimination.hpp"
#include "cxi/hgmetrology.hpp"
#include "cxi/infotheory.hpp"
#include "cxi/povm.hpp"
#include "cxi/randomgen.hpp"

namespace cxi::cli {

namespace {

using nlohmann::json;

struct ConfigError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::string log_base = "nats";
    std::optional<int> modes;
    std::optional<int> sequences;
    std::optional<int> measurements;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "master seed (required for stochastic commands)");
    cmd->add_option("--log-base", opts.log_base, "entropy unit for emitted columns")
        ->check(CLI::IsMember({"nats", "bits"}));
    cmd->add_option("--modes", opts.modes, "Hermite-Gauss truncation order");
    cmd->add_option("--sequences", opts.sequences, "number of simulated sequences");
    cmd->add_option("--measurements", opts.measurements, "measurements per sequence");
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& context) {
    if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
    for (const auto& item : j.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw ConfigError(context + ": unknown key \"" + item.key() + "\"");
        }
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key \"" + key + "\" has the wrong type");
    }
}

HgConfig hg_config_from(const json& j, const CommonOptions& opts) {
    HgConfig cfg;
    if (j.contains("hg")) {
        const json& h = j.at("hg");
        check_keys(h, {"sigma_h", "n_modes", "quad_nodes", "quad_range"}, "hg");
        cfg.sigma_h = get_or(h, "sigma_h", cfg.sigma_h);
        cfg.n_modes = get_or(h, "n_modes", cfg.n_modes);
        cfg.quad_nodes = get_or(h, "quad_nodes", cfg.quad_nodes);
        cfg.quad_range = get_or(h, "quad_range", cfg.quad_range);
    }
    if (opts.modes) cfg.n_modes = *opts.modes;
    return cfg;
}

std::uint64_t require_seed(const json& j, const CommonOptions& opts, const char* command) {
    if (opts.seed) return *opts.seed;
    if (j.contains("seed")) return get_or<std::uint64_t>(j, "seed", 0);
    throw ConfigError(std::string(command) + ": a master seed is required (--seed or config)");
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw IoError("cannot create output directory: " + dir);
    return p;
}

double unit_scale(const std::string& log_base) {
    return log_base == "bits" ? 1.0 / std::numbers::ln2 : 1.0;
}

std::string unit_suffix(const std::string& log_base) {
    return log_base == "bits" ? "_bits" : "_nats";
}

// ---------------------------------------------------------------------------
// cxi-verify

int cmd_cxi_verify(const CommonOptions& opts, bool self_test) {
    const json cfg = load_config(opts.config_path);
    check_keys(cfg, {"seed", "trials", "max_dim", "self_test"}, "cxi-verify");
    const int trials = get_or(cfg, "trials", 100);
    const int max_dim = get_or(cfg, "max_dim", 4);
    if (trials < 0 || max_dim < 2) throw ConfigError("cxi-verify: invalid trials/max_dim");
    const bool run_self_test = self_test || get_or(cfg, "self_test", false);
    const std::uint64_t seed = require_seed(cfg, opts, "cxi-verify");

    json report;
    report["seed"] = seed;
    report["projective_trials"] = trials;
    report["povm_trials"] = trials;

    if (run_self_test) {
        // Inject a POVM that deliberately violates completeness and make
        // sure the harness notices.
        Rng rng = make_rng(seed, 0xC0FFEE);
        Povm good = random_povm(2, 3, rng);
        std::vector<Matrix> kraus = good.kraus();
        kraus[0] *= 1.01;
        const Povm corrupted = Povm::unvalidated(std::move(kraus));
        report["self_test_residual"] = corrupted.completeness_residual();
        const bool detected = corrupted.completeness_residual() > kPovmCompletenessTol;
        report["self_test_detected"] = detected;
        std::cout << report.dump(2) << '\n';
        return detected ? kExitInvariant : kExitConfig;
    }

    double max_proj_residual = 0.0;
    double max_povm_residual = 0.0;
    double max_isometry_residual = 0.0;
    double max_statistics_residual = 0.0;
    int eigensolver_failures = 0;
    json failed_seeds = json::array();

    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        try {
            const Eigen::Index dim =
                2 + static_cast<Eigen::Index>(uniform01(rng) * (max_dim - 1));
            const std::size_t n_states = 2 + static_cast<std::size_t>(uniform01(rng) * 4);
            const Ensemble e = random_ensemble(dim, n_states, rng);
            const ProjectiveMeasurement basis = random_projective_measurement(dim, rng);
            max_proj_residual = std::max(max_proj_residual, std::abs(cxi_residual(e, basis)));

            const Eigen::Index povm_dim = 2 + static_cast<Eigen::Index>(uniform01(rng) * 2);
            const std::size_t n_outcomes = 2 + static_cast<std::size_t>(uniform01(rng) * 3);
            const Ensemble pe = random_ensemble(povm_dim, 2 + (t % 3), rng);
            const Povm povm = random_povm(povm_dim, n_outcomes, rng);
            max_povm_residual = std::max(max_povm_residual, std::abs(povm_cxi_residual(pe, povm)));

            const NaimarkDilation dilation(povm);
            max_isometry_residual = std::max(max_isometry_residual, dilation.isometry_residual());
            const DensityMatrix rho = ensemble_state(pe);
            const DensityMatrix dilated = dilate_state(rho, dilation);
            const RealVector direct = povm_probabilities(rho, povm).weights();
            for (std::size_t j = 0; j < povm.n_outcomes(); ++j) {
                const double via_dilation =
                    (dilation.dilated_projector(j) * dilated.matrix()).trace().real();
                max_statistics_residual = std::max(
                    max_statistics_residual,
                    std::abs(via_dilation - direct[static_cast<Eigen::Index>(j)]));
            }
        } catch (const NumericError&) {
            ++eigensolver_failures;
            failed_seeds.push_back(t);
        }
    }

    constexpr double kResidualGate = 1e-9;
    const double max_residual = std::max(max_proj_residual, max_povm_residual);
    const bool pass = max_residual < kResidualGate &&
                      max_isometry_residual < kResidualGate &&
                      max_statistics_residual < kResidualGate && eigensolver_failures == 0;

    report["max_residual_projective"] = max_proj_residual;
    report["max_residual_povm"] = max_povm_residual;
    report["max_isometry_residual"] = max_isometry_residual;
    report["max_statistics_residual"] = max_statistics_residual;
    report["eigensolver_failures"] = eigensolver_failures;
    report["failed_trials"] = failed_seeds;
    report["pass"] = pass;

    const std::string text = report.dump(2);
    std::cout << text << '\n';
    if (!opts.out_dir.empty() && opts.out_dir != ".") {
        const auto dir = prepare_out_dir(opts.out_dir);
        std::ofstream out(dir / "cxi_verify_report.json");
        if (!out) throw IoError("cannot write report");
        out << text << '\n';
    }
    return pass ? kExitSuccess : kExitInvariant;
}

// ---------------------------------------------------------------------------
// bloch

std::string theta_tag(double theta) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", theta);
    return buf;
}

int cmd_bloch(const CommonOptions& opts) {
    const json cfg = load_config(opts.config_path);
    check_keys(cfg, {"thetas", "n_polar", "n_azimuth", "report_points"}, "bloch");
    std::vector<double> thetas{std::numbers::pi / 10.0, std::numbers::pi / 2.0, std::numbers::pi};
    if (cfg.contains("thetas")) thetas = get_or(cfg, "thetas", thetas);
    const int n_polar = get_or(cfg, "n_polar", 181);
    const int n_azimuth = get_or(cfg, "n_azimuth", 91);
    const int report_points = get_or(cfg, "report_points", 50);
    if (thetas.empty() || report_points < 1) throw ConfigError("bloch: empty grids");

    const double scale = unit_scale(opts.log_base);
    const std::string unit = unit_suffix(opts.log_base);
    const auto dir = prepare_out_dir(opts.out_dir);

    for (double theta : thetas) {
        const DiscriminationProblem problem(theta);
        const auto samples = coherence_landscape(problem, n_polar, n_azimuth);
        CsvWriter csv((dir / ("landscape_theta_" + theta_tag(theta) + ".csv")).string(),
                      {"polar", "azimuth", "coherence" + unit, "normalized"});
        for (const auto& s : samples) {
            csv.row({s.direction.polar, s.direction.azimuth, s.coherence * scale, s.normalized});
        }
        csv.close();
    }

    std::vector<double> report_thetas;
    report_thetas.reserve(static_cast<std::size_t>(report_points));
    for (int i = 1; i <= report_points; ++i) {
        report_thetas.push_back(std::numbers::pi * i / report_points);
    }
    CsvWriter report((dir / "discrimination_report.csv").string(),
                     {"theta", "chi" + unit, "projective_coherence_norm", "usd_coherence_norm",
                      "projective_error", "usd_error"});
    for (const auto& row : coherence_vs_theta_report(report_thetas)) {
        report.row({row.theta, row.chi * scale, row.projective_norm_coherence,
                    row.usd_norm_coherence, row.projective_error, row.usd_error});
    }
    report.close();
    return kExitSuccess;
}

// ---------------------------------------------------------------------------
// hg-coherence / hg-simulate

void write_distribution(const std::filesystem::path& path, const SourceGrid& grid) {
    CsvWriter csv(path.string(), {"phi", "weight"});
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        csv.row({grid.phis()[i], grid.weights()[i]});
    }
    csv.close();
}

void write_curve(const std::filesystem::path& path, const std::vector<CoherencePoint>& curve,
                 double scale, const std::string& unit) {
    CsvWriter csv(path.string(), {"theta", "coherence" + unit, "chi" + unit});
    for (const auto& p : curve) {
        csv.row({p.theta, p.coherence * scale, p.chi * scale});
    }
    csv.close();
}

/// Positive local-minimum shifts of the prior coherence curve, ascending.
std::vector<double> positive_optima(const std::vector<CoherencePoint>& curve) {
    std::vector<double> values;
    values.reserve(curve.size());
    for (const auto& p : curve) values.push_back(p.coherence);
    std::vector<double> optima;
    for (std::size_t idx : local_minima(values)) {
        if (curve[idx].theta > 0.0) optima.push_back(curve[idx].theta);
    }
    std::sort(optima.begin(), optima.end());
    return optima;
}

int cmd_hg_coherence(const CommonOptions& opts) {
    const json cfg = load_config(opts.config_path);
    check_keys(cfg, {"hg", "theta_min", "theta_max", "theta_step", "post_outcome"}, "hg-coherence");
    const HgConfig hg = hg_config_from(cfg, opts);
    const double theta_min = get_or(cfg, "theta_min", -5.0);
    const double theta_max = get_or(cfg, "theta_max", 5.0);
    const double theta_step = get_or(cfg, "theta_step", 0.05);
    const int post_outcome = get_or(cfg, "post_outcome", 2);

    const double scale = unit_scale(opts.log_base);
    const std::string unit = unit_suffix(opts.log_base);
    const auto dir = prepare_out_dir(opts.out_dir);

    const SourceGrid prior = default_prior();
    const std::vector<double> thetas = shift_grid(theta_min, theta_max, theta_step);
    const auto prior_curve = coherence_vs_shift(prior, thetas, hg);

    const auto optima = positive_optima(prior_curve);
    if (optima.empty()) {
        throw InvariantViolation("hg-coherence: prior coherence curve has no positive local minimum");
    }
    const double theta_opt1 = optima.front();
    const SourceGrid post =
        bayes_update(prior, measurement_model(prior, theta_opt1, hg), post_outcome);
    const auto post_curve = coherence_vs_shift(post, thetas, hg);

    write_distribution(dir / "prior_distribution.csv", prior);
    write_distribution(dir / "post_distribution.csv", post);
    write_curve(dir / "coherence_prior.csv", prior_curve, scale, unit);
    write_curve(dir / "coherence_post.csv", post_curve, scale, unit);
    return kExitSuccess;
}

int cmd_hg_simulate(const CommonOptions& opts) {
    const json cfg = load_config(opts.config_path);
    check_keys(cfg,
               {"hg", "seed", "n_sequences", "n_measurements", "adaptive_bound", "adaptive_step",
                "threads"},
               "hg-simulate");
    const HgConfig hg = hg_config_from(cfg, opts);
    SimulationConfig sim;
    sim.seed = require_seed(cfg, opts, "hg-simulate");
    sim.n_sequences = get_or(cfg, "n_sequences", sim.n_sequences);
    sim.n_measurements = get_or(cfg, "n_measurements", sim.n_measurements);
    sim.adaptive_bound = get_or(cfg, "adaptive_bound", sim.adaptive_bound);
    sim.adaptive_step = get_or(cfg, "adaptive_step", sim.adaptive_step);
    sim.threads = get_or(cfg, "threads", sim.threads);
    if (opts.sequences) sim.n_sequences = *opts.sequences;
    if (opts.measurements) sim.n_measurements = *opts.measurements;
    if (sim.n_sequences < 1 || sim.n_measurements < 1) {
        throw ConfigError("hg-simulate: sequence and measurement counts must be positive");
    }

    const auto dir = prepare_out_dir(opts.out_dir);
    const SourceGrid prior = default_prior();

    // The theta_opt strategies come from the prior coherence curve, located
    // here rather than hard-coded.
    const auto curve = coherence_vs_shift(prior, shift_grid(-5.0, 5.0, 0.05), hg);
    const auto optima = positive_optima(curve);
    if (optima.size() < 2) {
        throw InvariantViolation(
            "hg-simulate: prior coherence curve does not expose two positive local minima");
    }
    const double theta_opt1 = optima[0];
    const double theta_opt2 = optima[1];

    const std::vector<ShiftStrategy> strategies{
        {"theta_0", ShiftStrategyKind::kConstant, 0.0},
        {"theta_0.5", ShiftStrategyKind::kConstant, 0.5},
        {"theta_opt1", ShiftStrategyKind::kConstant, theta_opt1},
        {"theta_opt2", ShiftStrategyKind::kConstant, theta_opt2},
        {"adaptive", ShiftStrategyKind::kAdaptive, 0.0},
    };

    const auto runs = simulate_amse(sim, prior, hg, strategies);

    json info;
    info["theta_opt1"] = theta_opt1;
    info["theta_opt2"] = theta_opt2;
    info["n_sequences"] = sim.n_sequences;
    info["n_measurements"] = sim.n_measurements;
    info["seed"] = sim.seed;
    std::cout << info.dump(2) << '\n';

    CsvWriter csv((dir / "amse.csv").string(), {"k", "strategy", "amse", "variance"});
    for (const auto& run : runs) {
        for (int k = 0; k < sim.n_measurements; ++k) {
            csv.row_cells({std::to_string(k + 1), run.strategy.name,
                           format_number(run.curve.mean[k]), format_number(run.curve.variance[k])});
        }
    }
    csv.close();
    return kExitSuccess;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"ensemble-coherence toolkit: CXI identity checks, Bloch-sphere state "
                 "discrimination, and Hermite-Gauss Bayesian localization"};
    app.require_subcommand(1);

    CommonOptions verify_opts, bloch_opts, hgc_opts, hgs_opts;
    bool self_test = false;

    CLI::App* verify = app.add_subcommand("cxi-verify", "randomized CXI equality verification");
    add_common_flags(verify, verify_opts);
    verify->add_flag("--self-test", self_test, "inject a corrupted POVM and expect detection");

    CLI::App* bloch = app.add_subcommand("bloch", "Bloch-sphere discrimination landscapes/report");
    add_common_flags(bloch, bloch_opts);

    CLI::App* hgc = app.add_subcommand("hg-coherence", "Hermite-Gauss coherence curves and tables");
    add_common_flags(hgc, hgc_opts);

    CLI::App* hgs = app.add_subcommand("hg-simulate", "Hermite-Gauss AMSE simulation");
    add_common_flags(hgs, hgs_opts);

    try {
        app.parse(argc, argv);
        if (verify->parsed()) return cmd_cxi_verify(verify_opts, self_test);
        if (bloch->parsed()) return cmd_bloch(bloch_opts);
        if (hgc->parsed()) return cmd_hg_coherence(hgc_opts);
        if (hgs->parsed()) return cmd_hg_simulate(hgs_opts);
        return kExitConfig;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
}

}  // namespace cxi::cli
