#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "oracles.hpp"
#include "waveframe/analysis.hpp"
#include "waveframe/scenario.hpp"
#include "waveframe/series.hpp"

using namespace waveframe;

namespace {

SampledSeries analytic_series(const char* name, double duration, double dt) {
    return sample_series(builtin_scenario(name), 0.0, duration, dt, true);
}

}  // namespace

TEST_CASE("analyze E1: constant invariants in per-unit output") {
    AnalyzeOptions opts;
    opts.omega_base = kOmegaRef;
    opts.v_base = 15e3;
    const auto rows = analyze_series(analytic_series("E1", 0.02, 1e-5), opts);
    for (const AnalyzeRow& r : rows) {
        REQUIRE(r.defined);
        CHECK(r.w_kappa == doctest::Approx(kOmegaRef).epsilon(1e-9));
        CHECK(std::abs(r.w_tau) < 1e-9 * kOmegaRef);
        CHECK(r.v_t == doctest::Approx(std::sqrt(1.5) * 15e3).epsilon(1e-9));
    }
}

TEST_CASE("analyze E2: dq components oscillate while the tangent component is flat") {
    AnalyzeOptions opts;
    const auto rows = analyze_series(analytic_series("E2", 0.1, 1e-4), opts);
    double vd_min = 1e30, vd_max = -1e30;
    for (const AnalyzeRow& r : rows) {
        REQUIRE(r.defined);
        vd_min = std::min(vd_min, r.v_d);
        vd_max = std::max(vd_max, r.v_d);
        CHECK(r.v_t == doctest::Approx(std::sqrt(1.5) * 15e3).epsilon(1e-9));
        CHECK(r.w_kappa == doctest::Approx(1.2 * kOmegaRef).epsilon(1e-9));
    }
    const double amplitude = std::sqrt(1.5) * 15e3;
    CHECK(vd_max > 0.9 * amplitude);
    CHECK(vd_min < -0.9 * amplitude);
}

TEST_CASE("analyze E5: planar trajectory keeps w_tau at zero") {
    AnalyzeOptions opts;
    const auto rows = analyze_series(analytic_series("E5", 0.05, 1e-5), opts);
    for (const AnalyzeRow& r : rows) {
        REQUIRE(r.defined);
        CHECK(std::abs(r.w_tau) < 1e-8 * kOmegaRef);
    }
}

TEST_CASE("serial and parallel kernels produce identical rows") {
    SampledSeries series = sample_series(builtin_scenario("E6"), 0.0, 0.03, 1e-5, false);
    series = with_fd_derivatives(series, 2);

    AnalyzeOptions opts;
    opts.exec = ExecMode::serial;
    const auto serial_rows = analyze_series(series, opts);
    opts.exec = ExecMode::parallel;
    const auto parallel_rows = analyze_series(series, opts);
    REQUIRE(serial_rows.size() == parallel_rows.size());
    for (std::size_t k = 0; k < serial_rows.size(); ++k) {
        CHECK(serial_rows[k].defined == parallel_rows[k].defined);
        CHECK(serial_rows[k].w_kappa == parallel_rows[k].w_kappa);
        CHECK(serial_rows[k].w_tau == parallel_rows[k].w_tau);
        CHECK(serial_rows[k].v_t == parallel_rows[k].v_t);
        CHECK(serial_rows[k].v_d == parallel_rows[k].v_d);
    }

    const SampledSeries six = sample_series(builtin_scenario("SIX"), 0.0, 1e-3, 1e-6, true);
    opts.exec = ExecMode::serial;
    const auto nd_serial = nd_analyze_series(six, opts);
    opts.exec = ExecMode::parallel;
    const auto nd_parallel = nd_analyze_series(six, opts);
    REQUIRE(nd_serial.size() == nd_parallel.size());
    for (std::size_t k = 0; k < nd_serial.size(); ++k) {
        CHECK(nd_serial[k].defined == nd_parallel[k].defined);
        CHECK(nd_serial[k].rank == nd_parallel[k].rank);
        if (nd_serial[k].defined) {
            for (std::size_t i = 0; i < nd_serial[k].omega_chi.size(); ++i)
                CHECK(nd_serial[k].omega_chi[i] == nd_parallel[k].omega_chi[i]);
        }
    }
}

TEST_CASE("finite-difference mode marks the margin undefined") {
    SampledSeries series = sample_series(builtin_scenario("E1"), 0.0, 0.002, 1e-5, false);
    series = with_fd_derivatives(series, 2);
    CHECK(series.margin == 2);
    AnalyzeOptions opts;
    const auto rows = analyze_series(series, opts);
    CHECK_FALSE(rows[0].defined);
    CHECK_FALSE(rows[1].defined);
    CHECK(rows[2].defined);
    CHECK_FALSE(rows[rows.size() - 1].defined);
    CHECK_FALSE(rows[rows.size() - 2].defined);
    CHECK(rows[rows.size() - 3].defined);
    // park components and magnitude stay available on flagged rows
    CHECK(rows[0].vmag > 0.0);
}

TEST_CASE("analyze rejects wrong dimensions and missing channels") {
    const SampledSeries six = sample_series(builtin_scenario("SIX"), 0.0, 1e-3, 1e-5, true);
    AnalyzeOptions opts;
    CHECK_THROWS_WITH_AS(analyze_series(six, opts), doctest::Contains("nd-analyze"), std::invalid_argument);

    const SampledSeries bare = sample_series(builtin_scenario("E1"), 0.0, 1e-3, 1e-5, false);
    CHECK_THROWS_WITH_AS(analyze_series(bare, opts), doctest::Contains("derivative"), std::invalid_argument);
}

TEST_CASE("nd-analyze of the six-phase scenario") {
    AnalyzeOptions opts;
    opts.omega_base = kOmegaRef;
    const SampledSeries six = sample_series(builtin_scenario("SIX"), 0.0, 5e-4, 5e-7, true);
    const auto rows = nd_analyze_series(six, opts);
    std::size_t checked = 0;
    for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
        REQUIRE(rows[k].defined);
        CHECK(rows[k].rank == 2);
        CHECK(rows[k].omega_chi[0] == doctest::Approx(kOmegaRef).epsilon(1e-8));
        for (std::size_t i = 1; i < 5; ++i) CHECK(std::abs(rows[k].omega_chi[i]) < 1e-8 * kOmegaRef);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("nd-analyze matches the 3-D pipeline on a balanced signal") {
    AnalyzeOptions opts;
    const SampledSeries e1 = sample_series(builtin_scenario("E1"), 0.0, 2e-4, 5e-7, true);
    const auto nd_rows = nd_analyze_series(e1, opts);
    const auto rows = analyze_series(e1, opts);
    for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
        REQUIRE(nd_rows[k].defined);
        CHECK(std::abs(nd_rows[k].omega_chi[0] - rows[k].w_kappa) < 1e-8 * kOmegaRef);
        CHECK(std::abs(nd_rows[k].omega_chi[1] - rows[k].w_tau) < 1e-8 * kOmegaRef);
    }
}

TEST_CASE("nd-analyze flags a zero series instead of aborting") {
    SampledSeries zeros;
    zeros.dt = 1e-4;
    zeros.dim = 3;
    for (int k = 0; k < 32; ++k) zeros.samples.push_back(Vec(3));
    const SampledSeries series = with_fd_derivatives(zeros, 2);
    AnalyzeOptions opts;
    const auto rows = nd_analyze_series(series, opts);
    for (const NdRow& r : rows) {
        CHECK_FALSE(r.defined);
        CHECK(r.rank == 0);
    }
}

TEST_CASE("compare report on matched and detuned signals") {
    AnalyzeOptions opts;
    opts.theta_p0 = std::numbers::pi / 6.0;  // the balanced signal's initial angle
    const CompareReport matched = compare_series(analytic_series("E1", 0.02, 1e-5), opts);
    CHECK(matched.defined == matched.samples);
    CHECK(matched.max_deviation < 1e-9);
    CHECK(matched.max_psi_w12 < 1e-9 * kOmegaRef);
    CHECK(matched.max_psi_w31 < 1e-9 * kOmegaRef);
    CHECK(matched.max_psi_w23 < 1e-9 * kOmegaRef);

    opts.theta_p0 = 0.0;
    const CompareReport detuned = compare_series(analytic_series("E2", 0.05, 1e-5), opts);
    CHECK(detuned.max_deviation > 0.1);
    CHECK(detuned.max_deviation <= 2.0);  // rows of two orthonormal matrices

    const std::string text = format_compare_report(detuned, opts);
    CHECK(text.find("|P - F|") != std::string::npos);
    CHECK(text.find("w23") != std::string::npos);
}

TEST_CASE("per-unit scaling applies at the csv writer only") {
    AnalyzeOptions opts;
    opts.v_base = 15e3;
    opts.omega_base = kOmegaRef;
    const auto rows = analyze_series(analytic_series("E1", 1e-3, 1e-5), opts);
    // in-memory rows stay in SI
    CHECK(rows[5].w_kappa == doctest::Approx(kOmegaRef).epsilon(1e-9));

    const auto path = std::filesystem::temp_directory_path() / "waveframe_pu.csv";
    write_analysis_csv(rows, opts, path.string());
    std::ifstream in(path);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "t,defined,vmag,w_kappa,w_tau,vT,vN,vB,vd,vq,vo");
    // w_kappa column in pu: "...,1,..." after t,defined,vmag
    const auto fields = [&] {
        std::vector<std::string> out;
        std::string cur;
        for (char c : first) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        out.push_back(cur);
        return out;
    }();
    REQUIRE(fields.size() == 11);
    CHECK(std::stod(fields[3]) == doctest::Approx(1.0).epsilon(1e-9));   // w_kappa
    CHECK(std::stod(fields[5]) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-9));  // vT
    std::filesystem::remove(path);
}

TEST_CASE("undefined rows leave the frame fields empty") {
    SampledSeries series = sample_series(builtin_scenario("E1"), 0.0, 2e-3, 1e-5, false);
    series = with_fd_derivatives(series, 2);
    AnalyzeOptions opts;
    const auto rows = analyze_series(series, opts);
    const auto path = std::filesystem::temp_directory_path() / "waveframe_undef.csv";
    write_analysis_csv(rows, opts, path.string());
    std::ifstream in(path);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);  // margin row: defined=0
    CHECK(first.find(",0,") != std::string::npos);
    CHECK(first.find(",,,,,") != std::string::npos);
    std::filesystem::remove(path);
}
