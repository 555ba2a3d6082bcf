#pragma once

#include <array>
#include <string>
#include <vector>

#include "waveframe/linalg.hpp"
#include "waveframe/scenario.hpp"

namespace waveframe {

/// Uniformly sampled multi-phase time series. deriv[k] holds the
/// (k+1)-th derivative channel when available; channels are either all
/// analytic (exact, margin 0) or produced by repeated central
/// differencing, in which case `margin` samples at each end carry no
/// valid derivative data.
struct SampledSeries {
    double dt = 0.0;
    double t0 = 0.0;
    std::size_t dim = 0;
    std::vector<Vec> samples;
    std::array<std::vector<Vec>, 3> deriv;
    std::size_t margin = 0;

    std::size_t size() const { return samples.size(); }
    double t(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
    bool has_deriv(int order) const {
        return order >= 1 && order <= 3 && !deriv[static_cast<std::size_t>(order - 1)].empty();
    }
};

/// Uniform sampling over [t0, t0 + duration], endpoints included. With
/// with_analytic, closed-form derivative channels up to order 3 are
/// attached.
SampledSeries sample_series(const WaveformScenario& sc, double t0, double duration, double dt,
                            bool with_analytic);

/// order-fold repeated central differencing of the sample channel.
/// The result's margin marks the `order` boundary samples at each end
/// that carry no data. Second-order accurate per pass. Throws when the
/// series is shorter than 2*order + 1 samples.
SampledSeries differentiate(const SampledSeries& series, int order);

/// Attach finite-difference derivative channels up to max_order (1..3),
/// replacing any existing channels and widening the margin.
SampledSeries with_fd_derivatives(const SampledSeries& series, int max_order);

/// Read a `t,v1,...,vn` CSV. `#`-prefixed lines are ignored. Ragged rows,
/// non-uniform time spacing and non-finite fields are rejected with the
/// offending line number.
SampledSeries read_csv(const std::string& path);

/// Write samples (and derivative channels when present and requested)
/// with shortest round-trip formatting, so read_csv reproduces the values
/// bit for bit.
void write_csv(const SampledSeries& series, const std::string& path, bool with_derivs = false);

/// Shortest round-trip decimal formatting of a double.
std::string format_double(double value);

}  // namespace waveframe
