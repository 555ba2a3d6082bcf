#include "waveframe/scenario.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "waveframe/park.hpp"

namespace waveframe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAlpha = 2.0 * kPi / 3.0;
constexpr double kBeta = 2.0 * kPi / 6.0;
constexpr double kNominalVolts = 15e3;

WaveformScenario balanced_base() {
    WaveformScenario sc;
    sc.n_phases = 3;
    sc.amplitude.base = kNominalVolts;
    sc.frequency.base = kOmegaRef;
    sc.phase_offsets = {0.0, -kAlpha, kAlpha};
    sc.theta0 = kPi / 6.0;
    return sc;
}

// Derivatives 0..3 of sin(k*phi) given phi and its derivatives.
std::array<double, 4> sin_derivatives(double k, const std::array<double, 4>& phi) {
    const double g = k * phi[0];
    const double g1 = k * phi[1];
    const double g2 = k * phi[2];
    const double g3 = k * phi[3];
    const double s = std::sin(g);
    const double c = std::cos(g);
    return {s, g1 * c, g2 * c - g1 * g1 * s, g3 * c - 3.0 * g1 * g2 * s - g1 * g1 * g1 * c};
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names = {"E1", "E2", "E3", "E4", "E5", "E6", "SIX"};
    return names;
}

WaveformScenario builtin_scenario(std::string_view name) {
    std::string upper(name);
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

    WaveformScenario sc;
    if (upper == "E1") {
        sc = balanced_base();
    } else if (upper == "E2") {
        sc = balanced_base();
        sc.frequency.base = 1.2 * kOmegaRef;
    } else if (upper == "E3") {
        sc = balanced_base();
        sc.amplitude.mod_depth = 3e3;
        sc.amplitude.mod_rate = 0.2 * kOmegaRef;
    } else if (upper == "E4") {
        sc = balanced_base();
        sc.frequency.mod_amp = 2.0 * kPi;
        sc.frequency.mod_rate = 20.0 * kPi;
    } else if (upper == "E5") {
        sc = balanced_base();
        sc.amplitude.scale = {1.0, 1.2, 0.8};
    } else if (upper == "E6") {
        sc = balanced_base();
        sc.harmonics.push_back({5, {0.1, 0.2, 0.1}});
    } else if (upper == "SIX") {
        sc.n_phases = 6;
        sc.amplitude.base = kNominalVolts;
        sc.frequency.base = kOmegaRef;
        sc.theta0 = 0.0;
        for (int h = 0; h < 6; ++h) sc.phase_offsets.push_back(-h * kBeta);
    } else {
        std::string msg = "unknown scenario '" + std::string(name) + "'; valid names:";
        for (const std::string& n : builtin_scenario_names()) msg += " " + n;
        throw std::invalid_argument(msg);
    }
    return sc;
}

void validate(const WaveformScenario& sc) {
    if (sc.n_phases < 2) throw std::invalid_argument("scenario: n_phases must be >= 2");
    if (sc.phase_offsets.size() != sc.n_phases)
        throw std::invalid_argument("scenario: phase_offsets size must match n_phases");
    if (!sc.amplitude.scale.empty() && sc.amplitude.scale.size() != sc.n_phases)
        throw std::invalid_argument("scenario: amplitude scale size must match n_phases");
    for (double s : sc.amplitude.scale)
        if (s < 0.0) throw std::invalid_argument("scenario: amplitudes must be >= 0");
    if (sc.amplitude.base < 0.0) throw std::invalid_argument("scenario: amplitude base must be >= 0");
    for (const Harmonic& h : sc.harmonics) {
        if (h.order < 2) throw std::invalid_argument("scenario: harmonic orders must be >= 2");
        if (h.weights.size() != sc.n_phases)
            throw std::invalid_argument("scenario: harmonic weights size must match n_phases");
    }
}

double scenario_theta(const WaveformScenario& sc, double t) {
    double theta = sc.theta0 + sc.frequency.base * t;
    if (sc.frequency.mod_amp != 0.0 && sc.frequency.mod_rate != 0.0)
        theta += sc.frequency.mod_amp / sc.frequency.mod_rate * (1.0 - std::cos(sc.frequency.mod_rate * t));
    return theta;
}

Vec evaluate(const WaveformScenario& sc, double t, int deriv_order) {
    if (deriv_order < 0 || deriv_order > 3)
        throw std::invalid_argument("evaluate: derivative order must be in 0..3");
    validate(sc);

    const double wr = sc.frequency.mod_rate;
    const double wa = sc.frequency.mod_amp;
    const std::array<double, 4> theta = {
        scenario_theta(sc, t),
        sc.frequency.base + wa * std::sin(wr * t),
        wa * wr * std::cos(wr * t),
        -wa * wr * wr * std::sin(wr * t),
    };

    const double ar = sc.amplitude.mod_rate;
    const double ad = sc.amplitude.mod_depth;
    const std::array<double, 4> amp = {
        sc.amplitude.base + ad * std::sin(ar * t),
        ad * ar * std::cos(ar * t),
        -ad * ar * ar * std::sin(ar * t),
        -ad * ar * ar * ar * std::cos(ar * t),
    };

    Vec out(sc.n_phases);
    for (std::size_t h = 0; h < sc.n_phases; ++h) {
        std::array<double, 4> phi = theta;
        phi[0] += sc.phase_offsets[h];

        std::array<double, 4> s = sin_derivatives(1.0, phi);
        for (const Harmonic& hm : sc.harmonics) {
            const std::array<double, 4> hs = sin_derivatives(static_cast<double>(hm.order), phi);
            for (int d = 0; d < 4; ++d) s[d] += hm.weights[h] * hs[d];
        }

        const double scale = sc.amplitude.scale.empty() ? 1.0 : sc.amplitude.scale[h];
        std::array<double, 4> a = amp;
        for (double& v : a) v *= scale;

        // Leibniz rule for (A * S)^(d)
        double value = 0.0;
        switch (deriv_order) {
            case 0: value = a[0] * s[0]; break;
            case 1: value = a[1] * s[0] + a[0] * s[1]; break;
            case 2: value = a[2] * s[0] + 2.0 * a[1] * s[1] + a[0] * s[2]; break;
            case 3: value = a[3] * s[0] + 3.0 * a[2] * s[1] + 3.0 * a[1] * s[2] + a[0] * s[3]; break;
            default: break;
        }
        out[h] = value;
    }
    return out;
}

}  // namespace waveframe
