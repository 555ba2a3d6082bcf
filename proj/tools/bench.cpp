// Timing comparison of the serial reference kernels against the OpenMP
// ones on a long harmonic-rich series.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "waveframe/analysis.hpp"
#include "waveframe/scenario.hpp"
#include "waveframe/series.hpp"

using namespace waveframe;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t samples = 500000;
    if (argc > 1) samples = static_cast<std::size_t>(std::atoll(argv[1]));
    const double dt = 1e-6;
    const double duration = static_cast<double>(samples - 1) * dt;

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled\n");
#endif
    std::printf("samples: %zu\n", samples);

    const WaveformScenario e6 = builtin_scenario("E6");
    SampledSeries series = sample_series(e6, 0.0, duration, dt, false);
    series = with_fd_derivatives(series, 2);

    AnalyzeOptions opts;
    double checksum_serial = 0.0, checksum_parallel = 0.0;

    opts.exec = ExecMode::serial;
    const double t_serial = time_ms([&] {
        const auto rows = analyze_series(series, opts);
        checksum_serial = rows[rows.size() / 2].w_kappa;
    });
    opts.exec = ExecMode::parallel;
    const double t_parallel = time_ms([&] {
        const auto rows = analyze_series(series, opts);
        checksum_parallel = rows[rows.size() / 2].w_kappa;
    });
    std::printf("analyze     serial %8.1f ms   openmp %8.1f ms   speedup %.2fx\n", t_serial, t_parallel,
                t_serial / t_parallel);

    const WaveformScenario six = builtin_scenario("SIX");
    SampledSeries nd_series = sample_series(six, 0.0, duration / 10.0, dt, true);
    opts.exec = ExecMode::serial;
    const double nd_serial = time_ms([&] { (void)nd_analyze_series(nd_series, opts); });
    opts.exec = ExecMode::parallel;
    const double nd_parallel = time_ms([&] { (void)nd_analyze_series(nd_series, opts); });
    std::printf("nd-analyze  serial %8.1f ms   openmp %8.1f ms   speedup %.2fx\n", nd_serial, nd_parallel,
                nd_serial / nd_parallel);

    if (checksum_serial != checksum_parallel) {
        std::printf("mismatch between serial and parallel results\n");
        return 1;
    }
    return 0;
}
