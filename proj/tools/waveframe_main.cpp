#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "waveframe/analysis.hpp"
#include "waveframe/scenario.hpp"
#include "waveframe/series.hpp"

namespace {

using namespace waveframe;

struct CommonArgs {
    std::string scenario;
    std::string input;
    double t0 = 0.0;
    double dt = 1e-4;
    double duration = 0.1;
    std::string deriv_mode = "analytic";
    double park_omega = kOmegaRef;
    double theta_p0 = 0.0;  // the built-in scenarios do not fix it; 0 unless set
    double v_base = 0.0;
    double omega_base = 0.0;
    double eps_v = 1e-6;
    double eps_kappa = 1e-9;
    double rank_tol = 1e-8;
    bool serial = false;
    std::string output;
};

void add_source_options(CLI::App* cmd, CommonArgs& args) {
    auto* sc = cmd->add_option("--scenario", args.scenario, "built-in scenario (E1..E6, SIX)");
    auto* in = cmd->add_option("--input", args.input, "input CSV with header t,v1,...,vn");
    sc->excludes(in);
    in->excludes(sc);
    cmd->add_option("--t0", args.t0, "start time for scenario sampling [s]");
    cmd->add_option("--dt", args.dt, "sample spacing for scenario sampling [s]");
    cmd->add_option("--duration", args.duration, "window length for scenario sampling [s]");
}

void add_analysis_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--deriv-mode", args.deriv_mode, "analytic | finite-difference (file input is always finite-difference)")
        ->check(CLI::IsMember({"analytic", "finite-difference"}));
    cmd->add_option("--park-omega", args.park_omega, "Park reference speed [rad/s], default 2*pi*60");
    cmd->add_option("--theta-p0", args.theta_p0, "initial Park angle [rad], default 0");
    cmd->add_option("--v-base", args.v_base, "voltage base [V]; output voltages in pu when set");
    cmd->add_option("--omega-base", args.omega_base, "frequency base [rad/s]; output frequencies in pu when set");
    cmd->add_option("--eps-v", args.eps_v, "speed floor relative to the series peak |v|");
    cmd->add_option("--eps-kappa", args.eps_kappa, "relative curvature degeneracy threshold");
    cmd->add_option("--rank-tol", args.rank_tol, "relative Gram-Schmidt rank tolerance");
    cmd->add_flag("--serial", args.serial, "run the serial reference kernels instead of OpenMP");
}

AnalyzeOptions to_options(const CommonArgs& args) {
    AnalyzeOptions opts;
    opts.park_omega = args.park_omega;
    opts.theta_p0 = args.theta_p0;
    opts.eps_v_rel = args.eps_v;
    opts.eps_kappa = args.eps_kappa;
    opts.rank_tol = args.rank_tol;
    opts.v_base = args.v_base;
    opts.omega_base = args.omega_base;
    opts.exec = args.serial ? ExecMode::serial : ExecMode::parallel;
    return opts;
}

// Load the requested source and make sure derivative channels are present.
SampledSeries load_series(const CommonArgs& args) {
    if (!args.scenario.empty()) {
        const WaveformScenario sc = builtin_scenario(args.scenario);
        if (args.deriv_mode == "analytic") return sample_series(sc, args.t0, args.duration, args.dt, true);
        SampledSeries s = sample_series(sc, args.t0, args.duration, args.dt, false);
        return with_fd_derivatives(s, 3);
    }
    if (args.deriv_mode == "analytic")
        std::cerr << "warning: analytic derivatives are unavailable for file input; using finite-difference\n";
    SampledSeries s = read_csv(args.input);
    return with_fd_derivatives(s, 3);
}

void require_source(const CommonArgs& args) {
    if (args.scenario.empty() && args.input.empty())
        throw std::runtime_error("exactly one of --scenario or --input is required");
}

int run(int argc, char** argv) {
    CLI::App app{"Park/Clarke and moving-frame analysis of sampled multi-phase waveforms"};
    app.require_subcommand(1);

    CommonArgs gen_args, an_args, cmp_args, nd_args;

    CLI::App* gen = app.add_subcommand("generate", "sample a built-in scenario to CSV");
    gen->add_option("--scenario", gen_args.scenario, "built-in scenario (E1..E6, SIX)")->required();
    gen->add_option("--t0", gen_args.t0, "start time [s]");
    gen->add_option("--dt", gen_args.dt, "sample spacing [s]");
    gen->add_option("--duration", gen_args.duration, "window length [s]");
    bool with_derivs = false;
    gen->add_flag("--with-derivs", with_derivs, "append analytic derivative columns");
    gen->add_option("-o,--output", gen_args.output, "output CSV path")->required();

    CLI::App* an = app.add_subcommand("analyze", "Park components and Frenet invariants of a 3-phase series");
    add_source_options(an, an_args);
    add_analysis_options(an, an_args);
    an->add_option("-o,--output", an_args.output, "output CSV path")->required();

    CLI::App* cmp = app.add_subcommand("compare", "Park-vs-Frenet frame deviation report");
    add_source_options(cmp, cmp_args);
    add_analysis_options(cmp, cmp_args);
    cmp->add_option("-o,--output", cmp_args.output, "write the report here instead of stdout");

    CLI::App* nd = app.add_subcommand("nd-analyze", "generalized frame invariants of an n-phase series");
    add_source_options(nd, nd_args);
    add_analysis_options(nd, nd_args);
    nd->add_option("-o,--output", nd_args.output, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        const WaveformScenario sc = builtin_scenario(gen_args.scenario);
        const SampledSeries s = sample_series(sc, gen_args.t0, gen_args.duration, gen_args.dt, with_derivs);
        write_csv(s, gen_args.output, with_derivs);
        return 0;
    }
    if (an->parsed()) {
        require_source(an_args);
        const SampledSeries s = load_series(an_args);
        const AnalyzeOptions opts = to_options(an_args);
        write_analysis_csv(analyze_series(s, opts), opts, an_args.output);
        return 0;
    }
    if (cmp->parsed()) {
        require_source(cmp_args);
        const SampledSeries s = load_series(cmp_args);
        const AnalyzeOptions opts = to_options(cmp_args);
        const std::string report = format_compare_report(compare_series(s, opts), opts);
        if (cmp_args.output.empty()) {
            std::cout << report;
        } else {
            std::ofstream out(cmp_args.output, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open '" + cmp_args.output + "' for writing");
            out << report;
        }
        return 0;
    }
    if (nd->parsed()) {
        require_source(nd_args);
        const SampledSeries s = load_series(nd_args);
        const AnalyzeOptions opts = to_options(nd_args);
        write_nd_csv(nd_analyze_series(s, opts), s.dim, opts, nd_args.output);
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
