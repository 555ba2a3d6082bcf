#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "waveframe/linalg.hpp"

namespace waveframe {

/// Per-phase amplitude V_h(t) = scale_h * (base + mod_depth * sin(mod_rate * t)).
struct AmplitudeLaw {
    std::vector<double> scale;  // dimensionless, one per phase (empty = all 1)
    double base = 0.0;          // V
    double mod_depth = 0.0;     // V
    double mod_rate = 0.0;      // rad/s
};

/// Instantaneous angular frequency omega(t) = base + mod_amp * sin(mod_rate * t);
/// the phase angle is its closed-form integral.
struct FrequencyLaw {
    double base = 0.0;      // rad/s
    double mod_amp = 0.0;   // rad/s
    double mod_rate = 0.0;  // rad/s
};

/// Harmonic component weight_h * sin(order * phase_h) added per phase.
struct Harmonic {
    int order = 0;
    std::vector<double> weights;  // relative, one per phase
};

/// Declarative synthetic multi-phase signal:
/// v_h(t) = V_h(t) * [sin(phi_h) + sum_k w_k sin(order_k * phi_h)],
/// phi_h(t) = theta0 + integral(omega) + phase_offsets[h].
struct WaveformScenario {
    std::size_t n_phases = 0;
    AmplitudeLaw amplitude;
    FrequencyLaw frequency;
    std::vector<double> phase_offsets;  // rad
    std::vector<Harmonic> harmonics;
    double theta0 = 0.0;  // rad
};

/// The built-in scenarios E1..E6 and the six-phase case SIX.
WaveformScenario builtin_scenario(std::string_view name);

/// Names accepted by builtin_scenario.
const std::vector<std::string>& builtin_scenario_names();

/// Closed-form value of the deriv_order-th time derivative (0..3).
Vec evaluate(const WaveformScenario& sc, double t, int deriv_order = 0);

/// Phase angle theta(t) of the scenario's frequency law (offset excluded).
double scenario_theta(const WaveformScenario& sc, double t);

void validate(const WaveformScenario& sc);

}  // namespace waveframe
