// rubin_cli.cpp: command-line driver for figure reproduction, sweeps, and the
// validation suite.
//
// Exit codes: 0 success, 1 usage/config error, 2 some grid points failed,
// 3 validation suite failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "rubin/sweep.hpp"
#include "rubin/validate.hpp"

namespace {

struct CliOptions {
    rubin::sweep::SweepConfig cfg;
    std::string temps_spec;     // "min:max:count"
    std::string format = "csv";
    std::string out_path = "-";
    std::string sweep_kind = "thermo";
    double perturb_cubic = 0.0;
    bool skip_slow = false;
};

void parse_temps_spec(const std::string& spec, rubin::sweep::SweepConfig& cfg) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':')
        throw CLI::ValidationError("--temps", "expected min:max:count, got '" + spec + "'");
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw CLI::ValidationError("--temps", "need 0 < min < max and count >= 2");
    cfg.T_lo = lo;
    cfg.T_hi = hi;
    cfg.T_count = count;
}

int emit(const rubin::sweep::SweepResult& result, const CliOptions& opt) {
    const auto format =
        opt.format == "json" ? rubin::sweep::Format::json : rubin::sweep::Format::csv;
    if (opt.out_path == "-") {
        rubin::sweep::write(result, format, std::cout);
    } else {
        std::ofstream os(opt.out_path);
        if (!os) {
            std::cerr << "cannot open output file: " << opt.out_path << "\n";
            return 1;
        }
        rubin::sweep::write(result, format, os);
    }
    return result.n_failed > 0 ? 2 : 0;
}

int run_records_mode(rubin::sweep::Mode mode, CliOptions& opt) {
    opt.cfg.mode = mode;
    if (!opt.temps_spec.empty()) parse_temps_spec(opt.temps_spec, opt.cfg);

    const auto start = std::chrono::steady_clock::now();
    const auto result = rubin::sweep::run(opt.cfg);
    const double secs = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    std::fprintf(stderr, "# %s: %zu records, %d failed, %.1f s\n",
                 rubin::sweep::to_string(mode).c_str(), result.records.size(), result.n_failed,
                 secs);
    return emit(result, opt);
}

int run_validate(const CliOptions& opt) {
    rubin::validate::ValidateOptions vopts;
    vopts.cubic_perturbation = opt.perturb_cubic;
    vopts.workers = opt.cfg.workers;
    vopts.skip_slow = opt.skip_slow;

    const auto results = rubin::validate::validate_all(vopts);
    bool ok = true;
    if (opt.out_path == "-") {
        ok = rubin::validate::print_report(results, std::cout);
    } else {
        std::ofstream os(opt.out_path);
        if (!os) {
            std::cerr << "cannot open output file: " << opt.out_path << "\n";
            return 1;
        }
        ok = rubin::validate::print_report(results, os);
    }
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact system-bath entanglement and stationary thermodynamics of a heavy "
                 "oscillator coupled to a harmonic chain"};
    app.set_config("--config", "", "flat key=value config file");
    CliOptions opt;

    app.add_option("--gamma", opt.cfg.gammas, "friction coefficients (comma separated)")
        ->delimiter(',');
    app.add_option("--temps", opt.temps_spec, "temperature grid min:max:count (log spaced)");
    app.add_option("--mass-system", opt.cfg.M, "system mass M");
    app.add_option("--mass-bath", opt.cfg.m, "bath oscillator mass m");
    app.add_option("--omega-s", opt.cfg.omega_S, "system frequency");
    app.add_option("--omega-b", opt.cfg.omega_B, "bath on-site frequency");
    app.add_option("--bath-size", opt.cfg.N, "number of chain oscillators");
    app.add_option("--t-min", opt.cfg.proto.t_min, "stationary window start (0 = auto)");
    app.add_option("--t-max", opt.cfg.proto.t_max, "stationary window end (0 = auto)");
    app.add_option("--samples", opt.cfg.proto.n_samples, "samples in the stationary window");
    app.add_option("--stability-tol", opt.cfg.proto.stability_tol,
                   "max relative spread of nu_min across samples");
    app.add_option("--workers", opt.cfg.workers, "worker threads (0 = hardware)");
    app.add_option("--out", opt.out_path, "output path ('-' = stdout)");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* fig1 = app.add_subcommand("fig1", "Clausius deviation vs temperature");
    auto* fig2 = app.add_subcommand("fig2", "negativity vs coupling for several temperatures");
    auto* fig3 = app.add_subcommand("fig3", "negativity vs temperature with critical points");
    auto* fig4 = app.add_subcommand("fig4", "Clausius deviation and negativity vs temperature");
    auto* sweep_cmd = app.add_subcommand("sweep", "general parameter sweep");
    sweep_cmd->add_option("--kind", opt.sweep_kind, "sweep kind")
        ->check(CLI::IsMember({"thermo", "negativity"}));
    auto* validate_cmd = app.add_subcommand("validate", "run the cross-verification suite");
    validate_cmd->add_option("--perturb-cubic", opt.perturb_cubic,
                             "fault-injection: scale the cubic's linear coefficient by 1+x");
    validate_cmd->add_flag("--skip-slow", opt.skip_slow, "skip the N=200 chain checks");

    for (auto* sub : {fig1, fig2, fig3, fig4, sweep_cmd, validate_cmd}) sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (fig1->parsed()) return run_records_mode(rubin::sweep::Mode::fig1, opt);
        if (fig2->parsed()) return run_records_mode(rubin::sweep::Mode::fig2, opt);
        if (fig3->parsed()) return run_records_mode(rubin::sweep::Mode::fig3, opt);
        if (fig4->parsed()) return run_records_mode(rubin::sweep::Mode::fig4, opt);
        if (sweep_cmd->parsed()) {
            const auto mode = opt.sweep_kind == "negativity"
                                  ? rubin::sweep::Mode::negativity_sweep
                                  : rubin::sweep::Mode::thermo_sweep;
            return run_records_mode(mode, opt);
        }
        if (validate_cmd->parsed()) return run_validate(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
