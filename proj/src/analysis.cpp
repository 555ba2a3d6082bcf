#include "waveframe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace waveframe {

namespace {

double series_speed_peak(const SampledSeries& series) {
    double peak = 0.0;
    for (const Vec& v : series.samples) peak = std::max(peak, norm(v));
    return peak;
}

void require_derivatives(const SampledSeries& series, int up_to, const char* who) {
    for (int order = 1; order <= up_to; ++order) {
        if (!series.has_deriv(order))
            throw std::invalid_argument(std::string(who) +
                                        ": series lacks derivative channels; sample with analytic "
                                        "derivatives or attach finite differences first");
    }
}

AnalyzeRow analyze_sample(const SampledSeries& series, std::size_t k, const AnalyzeOptions& opts,
                          double eps_v_abs) {
    AnalyzeRow row;
    row.t = series.t(k);
    const Vec& v = series.samples[k];
    row.vmag = norm(v);

    const double theta_p = opts.theta_p0 + opts.park_omega * row.t;
    const Vec dqo = park_apply(theta_p, v);
    row.v_d = dqo[0];
    row.v_q = dqo[1];
    row.v_o = dqo[2];

    const bool in_margin = k < series.margin || k + series.margin >= series.size();
    if (in_margin) return row;

    DerivativeBundle bundle{v, series.deriv[0][k], series.deriv[1][k], std::nullopt};
    const FrenetState st = frenet3(bundle, eps_v_abs, opts.eps_kappa);
    if (!st.defined) return row;

    row.defined = true;
    row.w_kappa = st.omega_kappa;
    row.w_tau = st.omega_tau;
    const Vec tnb = frenet_apply(st, v);
    row.v_t = tnb[0];
    row.v_n = tnb[1];
    row.v_b = tnb[2];
    return row;
}

void validate_options(const AnalyzeOptions& opts) {
    if (!(opts.eps_v_rel > 0.0) || !(opts.eps_kappa > 0.0) || !(opts.rank_tol > 0.0))
        throw std::invalid_argument("analysis: tolerances must be > 0");
    if (opts.v_base < 0.0 || opts.omega_base < 0.0)
        throw std::invalid_argument("analysis: per-unit bases must be >= 0");
}

void check_analyze_input(const SampledSeries& series) {
    if (series.dim != 3)
        throw std::invalid_argument("analyze: input has " + std::to_string(series.dim) +
                                    " phases; the dqo/TNB pipeline is 3-phase, use nd-analyze");
    require_derivatives(series, 2, "analyze");
}

}  // namespace

std::vector<AnalyzeRow> analyze_series_serial(const SampledSeries& series, const AnalyzeOptions& opts) {
    validate_options(opts);
    check_analyze_input(series);
    const double eps_v_abs = opts.eps_v_rel * series_speed_peak(series);
    std::vector<AnalyzeRow> rows(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) rows[k] = analyze_sample(series, k, opts, eps_v_abs);
    return rows;
}

std::vector<AnalyzeRow> analyze_series_parallel(const SampledSeries& series, const AnalyzeOptions& opts) {
    validate_options(opts);
    check_analyze_input(series);
    const double eps_v_abs = opts.eps_v_rel * series_speed_peak(series);
    std::vector<AnalyzeRow> rows(series.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(series.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k)
        rows[static_cast<std::size_t>(k)] = analyze_sample(series, static_cast<std::size_t>(k), opts, eps_v_abs);
    return rows;
}

std::vector<AnalyzeRow> analyze_series(const SampledSeries& series, const AnalyzeOptions& opts) {
    return opts.exec == ExecMode::parallel ? analyze_series_parallel(series, opts)
                                           : analyze_series_serial(series, opts);
}

namespace {

struct NdFramePath {
    std::vector<GeneralizedFrame> frames;  // only meaningful where valid
    std::vector<char> valid;
};

// Per-sample frame construction; the invariant pass stays sequential
// because of the sign alignment.
template <bool Parallel>
NdFramePath build_nd_frames(const SampledSeries& series, const AnalyzeOptions& opts, double eps_v_abs) {
    NdFramePath path;
    path.frames.resize(series.size());
    path.valid.assign(series.size(), 0);

    const int max_order = series.has_deriv(3) ? 3 : 2;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(series.size());

    auto body = [&](std::ptrdiff_t idx) {
        const std::size_t k = static_cast<std::size_t>(idx);
        if (k < series.margin || k + series.margin >= series.size()) return;
        const Vec& v = series.samples[k];
        if (norm(v) <= eps_v_abs) return;
        std::vector<Vec> derivs;
        derivs.reserve(static_cast<std::size_t>(max_order) + 1);
        derivs.push_back(v);
        for (int order = 1; order <= max_order; ++order) {
            if (derivs.size() == series.dim) break;
            derivs.push_back(series.deriv[static_cast<std::size_t>(order - 1)][k]);
        }
        try {
            path.frames[k] = gram_schmidt_frame(derivs, opts.rank_tol);
            path.valid[k] = 1;
        } catch (const std::domain_error&) {
            // degenerate sample, row stays flagged
        }
    };

    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < n; ++k) body(k);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k) body(k);
    }
    return path;
}

std::vector<NdRow> nd_rows_from_frames(const SampledSeries& series, NdFramePath& path) {
    std::vector<NdRow> rows(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        rows[k].t = series.t(k);
        rows[k].vmag = norm(series.samples[k]);
        if (path.valid[k]) rows[k].rank = path.frames[k].rank;
    }

    // Invariants over maximal contiguous valid runs; sign alignment and
    // central differences both need unbroken windows.
    std::size_t k = 0;
    while (k < series.size()) {
        if (!path.valid[k]) {
            ++k;
            continue;
        }
        std::size_t end = k;
        while (end < series.size() && path.valid[end]) ++end;
        if (end - k >= 3) {
            std::span<GeneralizedFrame> run(path.frames.data() + k, end - k);
            align_frame_signs(run);
            std::vector<double> s_dot(end - k);
            for (std::size_t i = k; i < end; ++i) s_dot[i - k] = rows[i].vmag;
            const auto inv = generalized_invariants(run, s_dot, series.dt);
            for (std::size_t i = k; i < end; ++i) {
                if (!inv[i - k].defined) continue;
                rows[i].defined = true;
                rows[i].omega_chi = inv[i - k].omega_chi;
            }
        }
        k = end;
    }
    return rows;
}

void check_nd_input(const SampledSeries& series) {
    if (series.dim < 3)
        throw std::invalid_argument("nd-analyze: input has " + std::to_string(series.dim) +
                                    " phases; need at least 3");
    require_derivatives(series, 2, "nd-analyze");
}

}  // namespace

std::vector<NdRow> nd_analyze_series_serial(const SampledSeries& series, const AnalyzeOptions& opts) {
    validate_options(opts);
    check_nd_input(series);
    const double eps_v_abs = opts.eps_v_rel * series_speed_peak(series);
    NdFramePath path = build_nd_frames<false>(series, opts, eps_v_abs);
    return nd_rows_from_frames(series, path);
}

std::vector<NdRow> nd_analyze_series_parallel(const SampledSeries& series, const AnalyzeOptions& opts) {
    validate_options(opts);
    check_nd_input(series);
    const double eps_v_abs = opts.eps_v_rel * series_speed_peak(series);
    NdFramePath path = build_nd_frames<true>(series, opts, eps_v_abs);
    return nd_rows_from_frames(series, path);
}

std::vector<NdRow> nd_analyze_series(const SampledSeries& series, const AnalyzeOptions& opts) {
    return opts.exec == ExecMode::parallel ? nd_analyze_series_parallel(series, opts)
                                           : nd_analyze_series_serial(series, opts);
}

CompareReport compare_series(const SampledSeries& series, const AnalyzeOptions& opts) {
    validate_options(opts);
    check_analyze_input(series);
    const double eps_v_abs = opts.eps_v_rel * series_speed_peak(series);

    const std::size_t n = series.size();
    std::vector<double> dev(n, 0.0), w12(n, 0.0), w31(n, 0.0), w23(n, 0.0);
    std::vector<char> ok(n, 0);

    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
    auto body = [&](std::ptrdiff_t idx) {
        const std::size_t k = static_cast<std::size_t>(idx);
        if (k < series.margin || k + series.margin >= n) return;
        DerivativeBundle bundle{series.samples[k], series.deriv[0][k], series.deriv[1][k], std::nullopt};
        const FrenetState st = frenet3(bundle, eps_v_abs, opts.eps_kappa);
        if (!st.defined) return;
        const double theta_p = opts.theta_p0 + opts.park_omega * series.t(k);
        const Mat frame = frenet_matrix(st);
        dev[k] = max_abs(park_matrix(theta_p) - frame);
        const Mat psi = psi_frame(theta_p, frame);
        const Mat omega_psi = psi_rotation(opts.park_omega, psi, frenet_rotation(st.omega_kappa, st.omega_tau));
        w12[k] = std::abs(omega_psi(0, 1));
        w31[k] = std::abs(omega_psi(0, 2));
        w23[k] = std::abs(omega_psi(1, 2));
        ok[k] = 1;
    };

    if (opts.exec == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < count; ++k) body(k);
    } else {
        for (std::ptrdiff_t k = 0; k < count; ++k) body(k);
    }

    CompareReport r;
    r.samples = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (!ok[k]) continue;
        ++r.defined;
        r.max_deviation = std::max(r.max_deviation, dev[k]);
        r.mean_deviation += dev[k];
        r.max_psi_w12 = std::max(r.max_psi_w12, w12[k]);
        r.max_psi_w31 = std::max(r.max_psi_w31, w31[k]);
        r.max_psi_w23 = std::max(r.max_psi_w23, w23[k]);
        r.mean_psi_w12 += w12[k];
        r.mean_psi_w31 += w31[k];
        r.mean_psi_w23 += w23[k];
    }
    if (r.defined > 0) {
        const double inv = 1.0 / static_cast<double>(r.defined);
        r.mean_deviation *= inv;
        r.mean_psi_w12 *= inv;
        r.mean_psi_w31 *= inv;
        r.mean_psi_w23 *= inv;
    }
    return r;
}

std::string format_compare_report(const CompareReport& report, const AnalyzeOptions& opts) {
    std::ostringstream os;
    os << "park-vs-frenet comparison\n";
    os << "  samples          " << report.samples << "\n";
    os << "  defined          " << report.defined << "\n";
    os << "  park omega       " << format_double(opts.park_omega) << " rad/s\n";
    os << "  theta_p0         " << format_double(opts.theta_p0) << " rad\n";
    os << "  |P - F|  max     " << format_double(report.max_deviation) << "\n";
    os << "  |P - F|  mean    " << format_double(report.mean_deviation) << "\n";
    os << "  psi rotation magnitudes (rad/s)\n";
    os << "    w12  max " << format_double(report.max_psi_w12) << "  mean " << format_double(report.mean_psi_w12)
       << "\n";
    os << "    w31  max " << format_double(report.max_psi_w31) << "  mean " << format_double(report.mean_psi_w31)
       << "\n";
    os << "    w23  max " << format_double(report.max_psi_w23) << "  mean " << format_double(report.mean_psi_w23)
       << "\n";
    return os.str();
}

namespace {

double scaled(double value, double base) { return base > 0.0 ? value / base : value; }

}  // namespace

void write_analysis_csv(const std::vector<AnalyzeRow>& rows, const AnalyzeOptions& opts,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "t,defined,vmag,w_kappa,w_tau,vT,vN,vB,vd,vq,vo\n";
    for (const AnalyzeRow& r : rows) {
        out << format_double(r.t) << "," << (r.defined ? 1 : 0) << ","
            << format_double(scaled(r.vmag, opts.v_base)) << ",";
        if (r.defined) {
            out << format_double(scaled(r.w_kappa, opts.omega_base)) << ","
                << format_double(scaled(r.w_tau, opts.omega_base)) << ","
                << format_double(scaled(r.v_t, opts.v_base)) << "," << format_double(scaled(r.v_n, opts.v_base))
                << "," << format_double(scaled(r.v_b, opts.v_base)) << ",";
        } else {
            out << ",,,,,";
        }
        out << format_double(scaled(r.v_d, opts.v_base)) << "," << format_double(scaled(r.v_q, opts.v_base))
            << "," << format_double(scaled(r.v_o, opts.v_base)) << "\n";
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_nd_csv(const std::vector<NdRow>& rows, std::size_t dim, const AnalyzeOptions& opts,
                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "t,vmag";
    for (std::size_t i = 1; i < dim; ++i) out << ",w_chi_" << i;
    out << ",rank\n";
    for (const NdRow& r : rows) {
        out << format_double(r.t) << "," << format_double(scaled(r.vmag, opts.v_base));
        for (std::size_t i = 0; i + 1 < dim; ++i) {
            out << ",";
            if (r.defined) out << format_double(scaled(r.omega_chi[i], opts.omega_base));
        }
        out << "," << r.rank << "\n";
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace waveframe
