#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "waveframe/linalg.hpp"

namespace waveframe {

/// Synchronous reference angular frequency, 2*pi*60 rad/s.
inline constexpr double kOmegaRef = 2.0 * std::numbers::pi * 60.0;

/// Accumulated Park angle. Stored unwrapped; wrap only for display.
struct ParkAngleState {
    double theta_p0 = 0.0;
    double theta_p = 0.0;
};

/// Bus-voltage and rotor angles referred to the same rotating reference.
struct CylindricalAngles {
    double theta_s = 0.0;   // rad
    double delta_r = 0.0;   // rad
    double omega_s = 0.0;   // rad/s
    double omega_r = 0.0;   // rad/s
};

/// Trapezoidal integration of a sampled speed signal, theta(t_k) =
/// theta_p0 + int_0^{t_k} omega. Compensated summation keeps long series
/// exact to rounding. Throws on an empty series or dt <= 0.
std::vector<double> park_angle(std::span<const double> omega_samples, double dt, double theta_p0);

/// Power-invariant Park matrix at the given angle; sine row first, then
/// cosine row, then the zero-sequence row.
Mat park_matrix(double theta_p);

/// Stationary alpha-beta-0 map: park_matrix(0).
Mat clarke_matrix();

/// v_dqo = P(theta_p) v_abc.
Vec park_apply(double theta_p, const Vec& v_abc);

/// Rotation matrix Omega_P = P' P^T of a Park frame spinning at omega_p.
Mat park_rotation(double omega_p);

/// Park transform of the abc-frame derivative: P v'_abc =
/// v'_dqo + Omega_P^T v_dqo (translation plus frame-rotation term).
Vec dq_derivative(const Vec& v_dqo_dot, double omega_p, const Vec& v_dqo);

/// Generator-to-network dq-plane rotation, C = P(theta_s-side) P^T(delta_r-side).
Mat cylindrical_frame(const CylindricalAngles& angles);

/// Omega_C = C' C^T; equals park_rotation(omega_s) - park_rotation(omega_r)
/// entry for entry.
Mat cylindrical_rotation(double omega_s, double omega_r);

/// Cartan rotation Omega_A = A' A^T of a sampled orthonormal path, with A'
/// by central difference. Endpoints are not extrapolated; passing a
/// boundary index throws, as does a path that is not orthonormal to 1e-8.
Mat attitude_rotation(std::span<const Mat> path, std::size_t index, double dt);

}  // namespace waveframe
