#include "waveframe/frenet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "waveframe/park.hpp"

namespace waveframe {

FrenetState frenet3(const DerivativeBundle& bundle, double eps_v, double eps_kappa) {
    if (bundle.dim() != 3 || bundle.v1.dim() != 3 || bundle.v2.dim() != 3)
        throw std::invalid_argument("frenet3: expects a 3-phase derivative bundle");

    FrenetState st;
    st.tangent = Vec(3);
    st.normal = Vec(3);
    st.binormal = Vec(3);
    st.darboux = Vec(3);

    const double speed = norm(bundle.v);
    st.s_dot = speed;
    if (speed <= eps_v) return st;  // undefined frame, speed carried

    st.tangent = (1.0 / speed) * bundle.v;

    const Vec vxv1 = cross(bundle.v, bundle.v1);
    const double vxv1_norm = norm(vxv1);
    st.kappa = vxv1_norm / (speed * speed * speed);
    st.omega_kappa = speed * st.kappa;
    if (vxv1_norm <= eps_kappa * speed * norm(bundle.v1)) {
        return st;  // straight-line motion: frame beyond T undefined
    }

    const Vec omega_vec = (1.0 / (speed * speed)) * vxv1;  // unnormalized binormal
    st.binormal = (1.0 / norm(omega_vec)) * omega_vec;
    st.normal = cross(st.binormal, st.tangent);
    st.tau = dot(bundle.v, cross(bundle.v1, bundle.v2)) / (vxv1_norm * vxv1_norm);
    st.omega_tau = speed * st.tau;
    st.darboux = st.omega_tau * st.tangent + st.omega_kappa * st.binormal;
    st.defined = true;
    return st;
}

Mat frenet_matrix(const FrenetState& state) {
    Mat f(3);
    f.set_row(0, state.tangent);
    f.set_row(1, state.normal);
    f.set_row(2, state.binormal);
    return f;
}

Mat frenet_rotation(double omega_kappa, double omega_tau) {
    Mat w(3);
    w(0, 1) = omega_kappa;
    w(1, 0) = -omega_kappa;
    w(1, 2) = omega_tau;
    w(2, 1) = -omega_tau;
    return w;
}

Vec frenet_apply(const FrenetState& state, const Vec& v) {
    if (!state.defined) throw std::domain_error("frenet_apply: undefined frame");
    if (v.dim() != 3) throw std::invalid_argument("frenet_apply: expects a 3-phase vector");
    return Vec{dot(state.tangent, v), dot(state.normal, v), dot(state.binormal, v)};
}

std::vector<double> frenet_serret_residual(std::span<const Mat> frames,
                                           std::span<const double> omega_kappa,
                                           std::span<const double> omega_tau, double dt) {
    if (frames.size() < 3) throw std::invalid_argument("frenet_serret_residual: need at least 3 samples");
    if (frames.size() != omega_kappa.size() || frames.size() != omega_tau.size())
        throw std::invalid_argument("frenet_serret_residual: path lengths differ");
    if (!(dt > 0.0)) throw std::invalid_argument("frenet_serret_residual: dt must be > 0");
    for (const Mat& f : frames) {
        if (!is_orthonormal(f, 1e-8))
            throw std::invalid_argument("frenet_serret_residual: non-orthonormal frame in path");
    }
    std::vector<double> res(frames.size() - 2);
    for (std::size_t k = 1; k + 1 < frames.size(); ++k) {
        const Mat deriv = (1.0 / (2.0 * dt)) * (frames[k + 1] - frames[k - 1]);
        const Mat model = frenet_rotation(omega_kappa[k], omega_tau[k]) * frames[k];
        res[k - 1] = max_abs(deriv - model);
    }
    return res;
}

Vec darboux_rotation(const FrenetState& state, const Vec& w) {
    if (!state.defined) throw std::domain_error("darboux_rotation: undefined frame");
    if (w.dim() != 3) throw std::invalid_argument("darboux_rotation: expects a 3-component vector");
    // Darboux vector in the frame's own coordinates.
    const Vec r{state.omega_tau, 0.0, state.omega_kappa};
    return cross(r, w);
}

Mat psi_frame(double theta_p, const Mat& frame) {
    if (frame.n != 3) throw std::invalid_argument("psi_frame: expects a 3x3 frame");
    if (!is_orthonormal(frame, 1e-10)) throw std::invalid_argument("psi_frame: frame is not orthonormal");
    return park_matrix(theta_p) * transpose(frame);
}

Mat psi_rotation(double omega_p, const Mat& psi, const Mat& omega_f) {
    if (psi.n != 3 || omega_f.n != 3) throw std::invalid_argument("psi_rotation: expects 3x3 matrices");
    if (!is_orthonormal(psi, 1e-8)) throw std::invalid_argument("psi_rotation: Psi is not orthonormal");
    if (!skew_part_check(omega_f, 1e-8 * (1.0 + max_abs(omega_f))))
        throw std::invalid_argument("psi_rotation: Omega_F is not skew-symmetric");
    return park_rotation(omega_p) - psi * omega_f * transpose(psi);
}

}  // namespace waveframe
