#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "waveframe/frenet.hpp"
#include "waveframe/frenet_nd.hpp"
#include "waveframe/park.hpp"
#include "waveframe/series.hpp"

namespace waveframe {

enum class ExecMode { serial, parallel };
enum class DerivMode { analytic, finite_difference };

struct AnalyzeOptions {
    double park_omega = kOmegaRef;  // rad/s
    double theta_p0 = 0.0;          // rad
    double eps_v_rel = 1e-6;        // speed floor, relative to the series peak |v|
    double eps_kappa = 1e-9;        // curvature degeneracy, relative
    double rank_tol = 1e-8;         // Gram-Schmidt rank tolerance, relative
    double v_base = 0.0;            // >0: report voltages in pu of this base
    double omega_base = 0.0;        // >0: report frequencies in pu of this base
    ExecMode exec = ExecMode::parallel;
};

/// One output sample of the dqo/TNB pipeline. Frame-dependent fields are
/// meaningless when !defined.
struct AnalyzeRow {
    double t = 0.0;
    bool defined = false;
    double vmag = 0.0;
    double w_kappa = 0.0;
    double w_tau = 0.0;
    double v_t = 0.0, v_n = 0.0, v_b = 0.0;
    double v_d = 0.0, v_q = 0.0, v_o = 0.0;
};

/// One output sample of the n-phase pipeline. omega_chi is empty when the
/// invariants are unavailable (boundary or degenerate sample); rank is 0
/// when no frame could be built.
struct NdRow {
    double t = 0.0;
    bool defined = false;
    double vmag = 0.0;
    std::vector<double> omega_chi;
    std::size_t rank = 0;
};

/// Park/Frenet deviation summary plus the rotation magnitudes of the
/// composed Park-Frenet attitude matrix.
struct CompareReport {
    std::size_t samples = 0;
    std::size_t defined = 0;
    double max_deviation = 0.0;
    double mean_deviation = 0.0;
    double max_psi_w12 = 0.0, max_psi_w31 = 0.0, max_psi_w23 = 0.0;
    double mean_psi_w12 = 0.0, mean_psi_w31 = 0.0, mean_psi_w23 = 0.0;
};

/// Per-sample Park components and Frenet invariants of a 3-phase series.
/// The series must carry derivative channels (analytic or finite
/// difference) of order 1 and 2.
std::vector<AnalyzeRow> analyze_series(const SampledSeries& series, const AnalyzeOptions& opts);
std::vector<AnalyzeRow> analyze_series_serial(const SampledSeries& series, const AnalyzeOptions& opts);
std::vector<AnalyzeRow> analyze_series_parallel(const SampledSeries& series, const AnalyzeOptions& opts);

/// Generalized-frame invariants of an n-phase series (n >= 3).
std::vector<NdRow> nd_analyze_series(const SampledSeries& series, const AnalyzeOptions& opts);
std::vector<NdRow> nd_analyze_series_serial(const SampledSeries& series, const AnalyzeOptions& opts);
std::vector<NdRow> nd_analyze_series_parallel(const SampledSeries& series, const AnalyzeOptions& opts);

/// Park-vs-Frenet frame comparison over a 3-phase series.
CompareReport compare_series(const SampledSeries& series, const AnalyzeOptions& opts);

std::string format_compare_report(const CompareReport& report, const AnalyzeOptions& opts);

/// CSV writers; per-unit scaling is applied here when bases are set.
void write_analysis_csv(const std::vector<AnalyzeRow>& rows, const AnalyzeOptions& opts,
                        const std::string& path);
void write_nd_csv(const std::vector<NdRow>& rows, std::size_t dim, const AnalyzeOptions& opts,
                  const std::string& path);

}  // namespace waveframe
