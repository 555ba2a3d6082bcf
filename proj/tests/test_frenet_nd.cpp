#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "waveframe/frenet.hpp"
#include "waveframe/frenet_nd.hpp"
#include "waveframe/park.hpp"
#include "waveframe/scenario.hpp"

using namespace waveframe;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vec> scenario_derivs(const WaveformScenario& sc, double t, int orders) {
    std::vector<Vec> derivs;
    for (int d = 0; d <= orders; ++d) derivs.push_back(evaluate(sc, t, d));
    return derivs;
}

std::vector<GeneralizedFrame> frame_path(const WaveformScenario& sc, double t0, double dt,
                                         std::size_t count, int orders) {
    std::vector<GeneralizedFrame> path;
    for (std::size_t k = 0; k < count; ++k)
        path.push_back(gram_schmidt_frame(scenario_derivs(sc, t0 + static_cast<double>(k) * dt, orders)));
    align_frame_signs(path);
    return path;
}

std::vector<double> speeds(const WaveformScenario& sc, double t0, double dt, std::size_t count) {
    std::vector<double> s(count);
    for (std::size_t k = 0; k < count; ++k) s[k] = norm(evaluate(sc, t0 + static_cast<double>(k) * dt, 0));
    return s;
}

}  // namespace

TEST_CASE("gram_schmidt_frame recovers the park rows for the balanced three-phase signal") {
    const WaveformScenario e1 = builtin_scenario("E1");
    for (double t : {0.0, 5e-3, 0.021}) {
        const GeneralizedFrame frame = gram_schmidt_frame(scenario_derivs(e1, t, 2));
        CHECK(frame.rank == 2);  // second derivative is anti-parallel to v
        const Mat p = park_matrix(scenario_theta(e1, t));
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(oracles::max_abs_diff(frame.vectors[i], p.row(i)) < 1e-9);
    }
}

TEST_CASE("gram_schmidt_frame on the balanced six-phase signal") {
    const WaveformScenario six = builtin_scenario("SIX");
    const double beta = kPi / 3.0;
    for (double t : {0.0, 1.7e-3, 9.3e-3}) {
        const GeneralizedFrame frame = gram_schmidt_frame(scenario_derivs(six, t, 3));
        CHECK(frame.rank == 2);
        const double theta = scenario_theta(six, t);
        Vec f1(6), f2(6), f3(6);
        for (std::size_t h = 0; h < 6; ++h) {
            f1[h] = std::sin(theta - static_cast<double>(h) * beta) / std::sqrt(3.0);
            f2[h] = std::cos(theta - static_cast<double>(h) * beta) / std::sqrt(3.0);
            f3[h] = 1.0 / std::sqrt(6.0);
        }
        CHECK(oracles::max_abs_diff(frame.vectors[0], f1) < 1e-9);
        CHECK(oracles::max_abs_diff(frame.vectors[1], f2) < 1e-9);
        CHECK(oracles::max_abs_diff(frame.vectors[2], f3) < 1e-9);

        // the frame is a full orthonormal basis
        Mat m(6);
        for (std::size_t i = 0; i < 6; ++i) m.set_row(i, frame.vectors[i]);
        CHECK(is_orthonormal(m, 1e-9));
        CHECK(determinant(m) > 0.0);
    }
}

TEST_CASE("gram_schmidt_frame of an orthonormal input is the identity") {
    std::vector<Vec> derivs;
    for (std::size_t i = 0; i < 4; ++i) {
        Vec e(4);
        e[i] = 1.0;
        derivs.push_back(e);
    }
    const GeneralizedFrame frame = gram_schmidt_frame(derivs);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(frame.vectors[i][j] == (i == j ? 1.0 : 0.0));
}

TEST_CASE("gram_schmidt_frame input validation") {
    CHECK_THROWS_AS(gram_schmidt_frame({}), std::invalid_argument);

    std::vector<Vec> too_many(4, Vec{1.0, 0.0, 0.0});
    CHECK_THROWS_WITH_AS(gram_schmidt_frame(too_many), doctest::Contains("at most"), std::invalid_argument);

    const std::vector<Vec> zero_first = {Vec{0.0, 0.0, 0.0}, Vec{1.0, 0.0, 0.0}};
    CHECK_THROWS_WITH_AS(gram_schmidt_frame(zero_first), doctest::Contains("degenerate"), std::domain_error);
}

TEST_CASE("gram_schmidt_frame marks near-dependent steps by the rank tolerance") {
    const Vec v{1.0, 0.0, 0.0};
    const Vec almost = Vec{1.0, 1e-6, 0.0};
    const std::vector<Vec> derivs = {v, almost};
    CHECK(gram_schmidt_frame(derivs, 1e-8).rank == 2);
    CHECK(gram_schmidt_frame(derivs, 1e-3).rank == 1);
}

TEST_CASE("generalized invariants of the six-phase signal") {
    const WaveformScenario six = builtin_scenario("SIX");
    const double dt = 5e-7;
    const std::size_t count = 101;
    const auto path = frame_path(six, 0.0, dt, count, 3);
    const auto inv = generalized_invariants(path, speeds(six, 0.0, dt, count), dt);
    CHECK_FALSE(inv.front().defined);
    CHECK_FALSE(inv.back().defined);
    for (std::size_t k = 1; k + 1 < count; ++k) {
        REQUIRE(inv[k].defined);
        CHECK(inv[k].omega_chi[0] == doctest::Approx(kOmegaRef).epsilon(1e-8));
        for (std::size_t i = 1; i < 5; ++i) CHECK(std::abs(inv[k].omega_chi[i]) < 1e-8 * kOmegaRef);
        CHECK(inv[k].chi[0] == doctest::Approx(inv[k].omega_chi[0] / (std::sqrt(3.0) * 15e3)).epsilon(1e-12));
    }
}

TEST_CASE("generalized invariants reduce to the azimuthal and torsional frequencies") {
    const WaveformScenario e1 = builtin_scenario("E1");
    const double dt = 5e-7;
    const std::size_t count = 41;
    const auto path = frame_path(e1, 0.0, dt, count, 2);
    const auto inv = generalized_invariants(path, speeds(e1, 0.0, dt, count), dt);
    for (std::size_t k = 1; k + 1 < count; ++k) {
        CHECK(inv[k].omega_chi[0] == doctest::Approx(kOmegaRef).epsilon(1e-8));
        CHECK(std::abs(inv[k].omega_chi[1]) < 1e-8 * kOmegaRef);
    }
}

TEST_CASE("generalized invariants of a static frame vanish") {
    std::vector<Vec> derivs;
    for (std::size_t i = 0; i < 3; ++i) {
        Vec e(4);
        e[i] = 1.0;
        derivs.push_back(e);
    }
    const std::vector<GeneralizedFrame> path(5, gram_schmidt_frame(derivs));
    const std::vector<double> s_dot(5, 1.0);
    for (const auto& inv : generalized_invariants(path, s_dot, 1e-4)) {
        for (double w : inv.omega_chi) CHECK(w == 0.0);
    }
}

TEST_CASE("generalized invariants reject sign-flipped paths") {
    const WaveformScenario e1 = builtin_scenario("E1");
    const double dt = 1e-5;
    auto path = frame_path(e1, 0.0, dt, 5, 2);
    path[2].vectors[2] *= -1.0;  // simulate a hodge sign jump
    const auto s_dot = speeds(e1, 0.0, dt, 5);
    CHECK_THROWS_WITH_AS(generalized_invariants(path, s_dot, dt), doctest::Contains("align_frame_signs"),
                         std::invalid_argument);
    align_frame_signs(path);
    CHECK_NOTHROW(generalized_invariants(path, s_dot, dt));
}

TEST_CASE("the n = 3 pipeline agrees with the closed-form frenet frame") {
    const WaveformScenario e6 = builtin_scenario("E6");
    const double dt = 2e-8;  // harmonic content turns the frame at ~6x the fundamental
    const std::size_t count = 41;
    const double t0 = 2.3e-3;
    const auto path = frame_path(e6, t0, dt, count, 2);
    const auto inv = generalized_invariants(path, speeds(e6, t0, dt, count), dt);
    for (std::size_t k = 1; k + 1 < count; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        const FrenetState st = frenet3(oracles::bundle_at(e6, t));
        REQUIRE(st.defined);
        CHECK(path[k].rank == 3);  // harmonics make the trajectory non-planar
        CHECK(oracles::max_abs_diff(path[k].vectors[0], st.tangent) < 1e-8);
        CHECK(oracles::max_abs_diff(path[k].vectors[1], st.normal) < 1e-8);
        CHECK(oracles::max_abs_diff(path[k].vectors[2], st.binormal) < 1e-8);
        CHECK(std::abs(inv[k].omega_chi[0] - st.omega_kappa) < 1e-8 * kOmegaRef);
        CHECK(std::abs(inv[k].omega_chi[1] - st.omega_tau) < 1e-8 * kOmegaRef);
    }
}

TEST_CASE("the reconstructed frame rotation is tridiagonal") {
    const WaveformScenario six = builtin_scenario("SIX");
    const double dt = 1e-6;
    const std::size_t count = 9;
    const auto path = frame_path(six, 0.0, dt, count, 3);
    for (std::size_t k = 1; k + 1 < count; ++k) {
        Mat f(6), fdot(6);
        for (std::size_t i = 0; i < 6; ++i) {
            f.set_row(i, path[k].vectors[i]);
            fdot.set_row(i, (1.0 / (2.0 * dt)) * (path[k + 1].vectors[i] - path[k - 1].vectors[i]));
        }
        const Mat omega = fdot * transpose(f);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                if (i == j || i + 1 == j || j + 1 == i) continue;
                CHECK(std::abs(omega(i, j)) < 1e-3);  // O(dt^2) with the local rates
            }
        }
    }
}

TEST_CASE("generalized curvatures are invariant under orthogonal phase changes") {
    const WaveformScenario six = builtin_scenario("SIX");
    const Mat r = oracles::random_rotation(6);
    const double dt = 5e-7;
    const std::size_t count = 21;

    std::vector<GeneralizedFrame> plain, turned;
    std::vector<double> s_plain(count), s_turned(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) * dt;
        std::vector<Vec> derivs = scenario_derivs(six, t, 3);
        plain.push_back(gram_schmidt_frame(derivs));
        s_plain[k] = norm(derivs[0]);
        for (Vec& d : derivs) d = r * d;
        turned.push_back(gram_schmidt_frame(derivs));
        s_turned[k] = norm(derivs[0]);
    }
    align_frame_signs(plain);
    align_frame_signs(turned);
    const auto inv_plain = generalized_invariants(plain, s_plain, dt);
    const auto inv_turned = generalized_invariants(turned, s_turned, dt);
    for (std::size_t k = 1; k + 1 < count; ++k) {
        CHECK(std::abs(inv_plain[k].omega_chi[0] - inv_turned[k].omega_chi[0]) < 1e-10 * kOmegaRef);
    }
}
