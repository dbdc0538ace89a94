// Copyright 2026 The dcert Authors
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

#include "dcert/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "dcert/estimate.h"
#include "dcert/qstate.h"

namespace dcert {

namespace {

constexpr size_t kDefaultNoiseSteps = 21;
constexpr size_t kDefaultMismatchSteps = 31;
constexpr double kDefaultMismatchMax = 0.3;

struct McPoint {
    double i_exp = std::nan("");
    double sigma = std::nan("");
    double z = std::nan("");
    bool certified = false;
};

McPoint monte_carlo_point(const ChannelModel &model, const RunConfig &cfg, uint64_t seed, double i_c) {
    McPoint point;
    SimulationResult sim = simulate(model, cfg.strategy, seed, cfg.trials, cfg.threads);
    if (sim.counts.total() == 0) {
        return point;
    }
    point.i_exp = plugin_mi(sim.counts);
    if (sim.counts.total() < 10 && sim.counts.occupied_cells() > 1) {
        return point;
    }
    BootstrapResult boot = bootstrap_sigma(sim.counts, cfg.resamples, seed, cfg.threads);
    point.sigma = boot.sigma;
    if (!boot.degenerate) {
        Verdict v = certify(point.i_exp, boot.sigma, i_c, cfg.z_threshold);
        point.z = v.z_score;
        point.certified = v.certified;
    }
    return point;
}

int write_output(const RunConfig &cfg, const std::string &text, std::ostream &out, std::ostream &err) {
    if (cfg.out.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file " << cfg.out << "\n";
        return 1;
    }
    file << text;
    file.close();
    if (!file) {
        err << "error: failed writing " << cfg.out << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

void RunConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (!(noise_p >= 0 && noise_p <= 1)) {
        throw std::invalid_argument("noise must be in [0, 1]");
    }
    if (!(dtau_ratio >= 0)) {
        throw std::invalid_argument("dtau must be non-negative");
    }
    if (!(c_scale > 0)) {
        throw std::invalid_argument("c-scale must be positive");
    }
}

DensityMatrix load_state(std::string_view source) {
    if (source == "resource") {
        return resource_state();
    }
    if (source == "maximally-mixed") {
        return DensityMatrix::maximally_mixed(4);
    }
    if (source == "bell-phi-plus") {
        return DensityMatrix::pure(bell_state(BellState::PhiPlus));
    }
    std::ifstream file{std::string(source)};
    if (!file) {
        throw std::invalid_argument("unknown state '" + std::string(source) + "' (not a builtin name or readable file)");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(file);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument("state file " + std::string(source) + " is not valid JSON: " + e.what());
    }
    DensityMatrix rho = state_from_json(doc);
    if (rho.dim() != 4) {
        throw std::invalid_argument("state file must hold a two-qubit (dim 4) state");
    }
    return rho;
}

std::string format_sig9(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

std::string format_report(const CorrelationReport &report) {
    auto fixed6 = [](double x) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", std::abs(x) < 5e-7 ? 0.0 : x);
        return std::string(buf);
    };
    std::ostringstream s;
    s << "mutual_info: " << fixed6(report.mutual_info) << "\n";
    s << "classical_corr: " << fixed6(report.classical_corr) << "\n";
    s << "discord: " << fixed6(report.discord) << "\n";
    s << "theta: " << fixed6(report.argmax.theta) << "\n";
    s << "phi: " << fixed6(report.argmax.phi) << "\n";
    return s.str();
}

nlohmann::json run_certification(const RunConfig &cfg) {
    cfg.validate();
    ChannelModel model{cfg.noise_p, std::nullopt};
    if (cfg.dtau_ratio > 0) {
        model.mismatch = cfg.mismatch();
    }
    SimulationResult sim = simulate(model, cfg.strategy, cfg.seed, cfg.trials, cfg.threads);
    if (sim.counts.total() == 0) {
        throw std::runtime_error("no coincident trials; cannot estimate I_exp");
    }
    double i_exp = plugin_mi(sim.counts);
    BootstrapResult boot = bootstrap_sigma(sim.counts, cfg.resamples, cfg.seed, cfg.threads);
    if (boot.degenerate) {
        throw std::runtime_error("bootstrap degenerate (all counts in one cell); sigma is 0");
    }
    Verdict v = certify(i_exp, boot.sigma, i_c_noise(cfg.noise_p), cfg.z_threshold);
    nlohmann::json doc = verdict_to_json(v, sim.trials, cfg.seed);
    doc["n_coincident"] = sim.coincidences;
    doc["strategy"] = cfg.strategy == StrategyKind::QuantumBell ? "quantum" : "classical";
    return doc;
}

std::string run_sweep(SweepKind kind, const RunConfig &cfg) {
    cfg.validate();
    bool mismatch = kind == SweepKind::Mismatch;
    size_t steps = cfg.steps ? cfg.steps : (mismatch ? kDefaultMismatchSteps : kDefaultNoiseSteps);
    double hi = cfg.max.value_or(mismatch ? kDefaultMismatchMax : 1.0);
    if (steps < 2) {
        throw std::invalid_argument("sweep needs at least 2 steps");
    }
    if (!(hi > 0) || (!mismatch && hi > 1)) {
        throw std::invalid_argument("sweep upper bound out of range");
    }

    std::ostringstream csv;
    csv << (mismatch ? "parameter,i_q_analytic,i_q_optics,i_c_analytic,i_exp_mc,sigma_mc,z,certified\n"
                     : "parameter,i_q_analytic,i_c_analytic,i_exp_mc,sigma_mc,z,certified\n");
    for (size_t i = 0; i < steps; i++) {
        double x = hi * static_cast<double>(i) / static_cast<double>(steps - 1);
        ChannelModel model{mismatch ? cfg.noise_p : x, std::nullopt};
        if (mismatch) {
            model.mismatch = MismatchModel{x, cfg.c_scale};
        }
        Rates r = rates(model);
        McPoint mc = monte_carlo_point(model, cfg, cfg.seed + i, r.i_c);
        csv << format_sig9(x) << "," << format_sig9(r.i_q) << ",";
        if (mismatch) {
            csv << format_sig9(*r.i_q_optics) << ",";
        }
        csv << format_sig9(r.i_c) << "," << format_sig9(mc.i_exp) << "," << format_sig9(mc.sigma) << ","
            << format_sig9(mc.z) << "," << (mc.certified ? "true" : "false") << "\n";
    }
    return csv.str();
}

nlohmann::json optics_process(const MismatchModel &m) {
    MeasurementModel povm = effective_bell_povm(m);
    nlohmann::json elements = nlohmann::json::array();
    nlohmann::json failure;
    double coherence = 0;
    for (size_t k = 0; k < povm.size(); k++) {
        const auto &e = povm.elements()[k];
        if (povm.labels()[k] == kFailureLabel) {
            failure = matrix_to_json(e);
            continue;
        }
        coherence = std::max(coherence, bell_coherence(e));
        elements.push_back({{"label", povm.labels()[k]}, {"matrix", matrix_to_json(e)}});
    }
    const auto &fail_op = povm.elements().back();
    return {
        {"dtau_ratio", m.dtau_ratio},
        {"c_scale", m.c_scale},
        {"xi", m.xi()},
        {"overlap", m.overlap()},
        {"elements", elements},
        {"failure", failure},
        {"mean_failure_weight", std::real(fail_op.trace()) / 4.0},
        {"completeness_residual", povm.completeness_residual()},
        {"max_bell_coherence", coherence},
    };
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Discord-based certification of entangling gates: simulator and certification harness", "dcert"};
    app.set_config("--config", "", "Read key=value options from a file; command-line flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string strategy = "quantum";
    double max_value = 0;
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Number of protocol trials")->check(CLI::Range(uint64_t{1}, uint64_t{1} << 62))->capture_default_str();
    app.add_option("--noise", cfg.noise_p, "White-noise mixing parameter p")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app.add_option("--dtau", cfg.dtau_ratio, "Temporal mismatch in coherence times")->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--c-scale", cfg.c_scale, "delta omega * tau_coh")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--strategy", strategy, "Bob's strategy")->check(CLI::IsMember({"quantum", "classical"}))->capture_default_str();
    app.add_option("--z-threshold", cfg.z_threshold, "Certification threshold in standard deviations")->capture_default_str();
    app.add_option("--out", cfg.out, "Output path (default stdout)");
    app.add_option("--state", cfg.state, "Builtin state name or JSON state file")->capture_default_str();
    app.add_option("--steps", cfg.steps, "Sweep grid points")->check(CLI::Range(size_t{2}, size_t{100000}));
    auto *max_opt = app.add_option("--max", max_value, "Sweep grid upper bound")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u))->capture_default_str();
    app.add_option("--resamples", cfg.resamples, "Bootstrap resamples")->check(CLI::Range(size_t{100}, size_t{1000000}))->capture_default_str();

    auto *discord_cmd = app.add_subcommand("discord", "Mutual information, classical correlation and discord of a state");
    auto *certify_cmd = app.add_subcommand("certify", "Run the protocol end to end and emit a verdict JSON");
    auto *sweep_noise_cmd = app.add_subcommand("sweep-noise", "CSV sweep over the white-noise parameter p");
    auto *sweep_mismatch_cmd = app.add_subcommand("sweep-mismatch", "CSV sweep over the temporal mismatch");
    auto *optics_cmd = app.add_subcommand("optics-process", "Dump the effective Bell-analyzer POVM as JSON");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }
    if (max_opt->count() > 0) {
        cfg.max = max_value;
    }
    cfg.strategy = strategy == "classical" ? StrategyKind::ClassicalZZ : StrategyKind::QuantumBell;

    try {
        if (discord_cmd->parsed()) {
            DensityMatrix rho = load_state(cfg.state);
            if (cfg.noise_p < 1) {
                rho = depolarize(rho, cfg.noise_p);
            }
            return write_output(cfg, format_report(discord(rho)), out, err);
        }
        if (certify_cmd->parsed()) {
            return write_output(cfg, run_certification(cfg).dump(2) + "\n", out, err);
        }
        if (sweep_noise_cmd->parsed()) {
            return write_output(cfg, run_sweep(SweepKind::Noise, cfg), out, err);
        }
        if (sweep_mismatch_cmd->parsed()) {
            return write_output(cfg, run_sweep(SweepKind::Mismatch, cfg), out, err);
        }
        if (optics_cmd->parsed()) {
            return write_output(cfg, optics_process(cfg.mismatch()).dump(2) + "\n", out, err);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace dcert
