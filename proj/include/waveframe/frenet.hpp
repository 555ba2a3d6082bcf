#pragma once

#include <optional>
#include <span>
#include <vector>

#include "waveframe/linalg.hpp"

namespace waveframe {

/// A phase vector with its time derivatives at one instant. v3 is only
/// needed by consumers that differentiate beyond the torsion formula.
struct DerivativeBundle {
    Vec v;
    Vec v1;
    Vec v2;
    std::optional<Vec> v3;

    std::size_t dim() const { return v.dim(); }
};

/// Frenet frame and invariants of a 3-phase trajectory at one instant.
/// `defined` is false when the speed or the curvature is numerically
/// degenerate; faults legitimately drive |v| toward zero, so this is a
/// value state, not an error.
struct FrenetState {
    Vec tangent;   // T
    Vec normal;    // N
    Vec binormal;  // B
    double s_dot = 0.0;        // |v|, V
    double kappa = 0.0;        // 1/Wb
    double tau = 0.0;          // 1/Wb
    double omega_kappa = 0.0;  // rad/s
    double omega_tau = 0.0;    // rad/s
    Vec darboux;               // omega_tau*T + omega_kappa*B, rad/s
    bool defined = false;
};

/// Frame and invariants from (v, v', v''). eps_v is an absolute speed
/// floor in volts; eps_kappa is relative (|v x v'| against |v||v'|).
FrenetState frenet3(const DerivativeBundle& bundle, double eps_v = 1e-12, double eps_kappa = 1e-9);

/// Rows T, N, B as a matrix.
Mat frenet_matrix(const FrenetState& state);

/// Frenet-Serret rotation matrix Omega_F for the given frequencies.
Mat frenet_rotation(double omega_kappa, double omega_tau);

/// Coordinates of v in the frame's own axes: (|v|, 0, 0) when the state
/// was computed from this v. Throws on an undefined frame.
Vec frenet_apply(const FrenetState& state, const Vec& v);

/// Max-abs entry of F'_k - Omega_F(w_kappa_k, w_tau_k) F_k with F' by
/// central difference; returned for interior samples k = 1..N-2.
std::vector<double> frenet_serret_residual(std::span<const Mat> frames,
                                           std::span<const double> omega_kappa,
                                           std::span<const double> omega_tau, double dt);

/// Frame-rotation term of the transformed derivative: F v' = w' +
/// darboux_rotation(state, w) for w = F v. Equals Omega_F^T w.
Vec darboux_rotation(const FrenetState& state, const Vec& w);

/// Change of coordinates from a local Frenet frame to a network Park
/// frame, Psi = P(theta_p) F^T.
Mat psi_frame(double theta_p, const Mat& frame);

/// Rotation of the composed attitude matrix: Omega_Psi = Omega_P -
/// Psi Omega_F Psi^T.
Mat psi_rotation(double omega_p, const Mat& psi, const Mat& omega_f);

}  // namespace waveframe
