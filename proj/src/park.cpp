#include "waveframe/park.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace waveframe {

namespace {

constexpr double kAlpha = 2.0 * std::numbers::pi / 3.0;

}  // namespace

std::vector<double> park_angle(std::span<const double> omega_samples, double dt, double theta_p0) {
    if (omega_samples.empty()) throw std::invalid_argument("park_angle: empty speed series");
    if (!(dt > 0.0)) throw std::invalid_argument("park_angle: dt must be > 0");
    std::vector<double> theta(omega_samples.size());
    theta[0] = theta_p0;
    double acc = 0.0;
    double carry = 0.0;  // Kahan compensation
    for (std::size_t k = 1; k < omega_samples.size(); ++k) {
        const double step = 0.5 * dt * (omega_samples[k - 1] + omega_samples[k]) - carry;
        const double next = acc + step;
        carry = (next - acc) - step;
        acc = next;
        theta[k] = theta_p0 + acc;
    }
    return theta;
}

Mat park_matrix(double theta_p) {
    const double c = std::sqrt(2.0 / 3.0);
    Mat p(3);
    p(0, 0) = c * std::sin(theta_p);
    p(0, 1) = c * std::sin(theta_p - kAlpha);
    p(0, 2) = c * std::sin(theta_p + kAlpha);
    p(1, 0) = c * std::cos(theta_p);
    p(1, 1) = c * std::cos(theta_p - kAlpha);
    p(1, 2) = c * std::cos(theta_p + kAlpha);
    const double z = 1.0 / std::sqrt(3.0);
    p(2, 0) = z;
    p(2, 1) = z;
    p(2, 2) = z;
    return p;
}

Mat clarke_matrix() { return park_matrix(0.0); }

Vec park_apply(double theta_p, const Vec& v_abc) { return park_matrix(theta_p) * v_abc; }

Mat park_rotation(double omega_p) {
    Mat w(3);
    w(0, 1) = omega_p;
    w(1, 0) = -omega_p;
    return w;
}

Vec dq_derivative(const Vec& v_dqo_dot, double omega_p, const Vec& v_dqo) {
    if (v_dqo_dot.dim() != 3 || v_dqo.dim() != 3)
        throw std::invalid_argument("dq_derivative: expects 3-component dqo vectors");
    return v_dqo_dot + transpose(park_rotation(omega_p)) * v_dqo;
}

Mat cylindrical_frame(const CylindricalAngles& angles) {
    const double d = angles.theta_s - angles.delta_r;
    Mat c(3);
    c(0, 0) = std::cos(d);
    c(0, 1) = std::sin(d);
    c(1, 0) = -std::sin(d);
    c(1, 1) = std::cos(d);
    c(2, 2) = 1.0;
    return c;
}

Mat cylindrical_rotation(double omega_s, double omega_r) {
    Mat w(3);
    w(0, 1) = omega_s - omega_r;
    w(1, 0) = omega_r - omega_s;
    return w;
}

Mat attitude_rotation(std::span<const Mat> path, std::size_t index, double dt) {
    if (path.size() < 3) throw std::invalid_argument("attitude_rotation: need at least 3 samples");
    if (index == 0 || index + 1 >= path.size())
        throw std::out_of_range("attitude_rotation: central difference undefined at boundary index " +
                                std::to_string(index));
    if (!(dt > 0.0)) throw std::invalid_argument("attitude_rotation: dt must be > 0");
    for (std::size_t k = index - 1; k <= index + 1; ++k) {
        const Mat g = path[k] * transpose(path[k]);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
        if (worst > 1e-8) {
            throw std::invalid_argument("attitude_rotation: path matrix " + std::to_string(k) +
                                        " is not orthonormal (|A A^T - I| = " + std::to_string(worst) + ")");
        }
    }
    const Mat deriv = (1.0 / (2.0 * dt)) * (path[index + 1] - path[index - 1]);
    return deriv * transpose(path[index]);
}

}  // namespace waveframe
