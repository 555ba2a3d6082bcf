#include "waveframe/frenet_nd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace waveframe {

GeneralizedFrame gram_schmidt_frame(std::span<const Vec> derivs, double rank_tol) {
    if (derivs.empty()) throw std::invalid_argument("gram_schmidt_frame: empty derivative list");
    const std::size_t n = derivs.front().dim();
    if (n < 2) throw std::invalid_argument("gram_schmidt_frame: dimension must be >= 2");
    if (derivs.size() > n)
        throw std::invalid_argument("gram_schmidt_frame: at most n derivative vectors for dimension " +
                                    std::to_string(n));
    if (!(rank_tol > 0.0)) throw std::invalid_argument("gram_schmidt_frame: rank_tol must be > 0");
    double scale = 0.0;
    for (const Vec& d : derivs) {
        if (d.dim() != n) throw std::invalid_argument("gram_schmidt_frame: mixed dimensions");
        scale = std::max(scale, norm(d));
    }
    if (norm(derivs.front()) <= 1e-12 * scale || scale == 0.0)
        throw std::domain_error("gram_schmidt_frame: first derivative vector is degenerate, frame undefined");

    GeneralizedFrame frame;
    frame.dim = n;
    frame.chi.assign(n - 1, 0.0);
    frame.omega_chi.assign(n - 1, 0.0);

    std::vector<Vec> kept;
    for (const Vec& d : derivs) {
        Vec r = d;
        for (const Vec& q : kept) r -= dot(q, r) * q;
        const double rn = norm(r);
        if (rn <= rank_tol * norm(d) || rn == 0.0) continue;  // flat direction
        ++frame.rank;
        // A non-degenerate step beyond n-1 retained vectors can only confirm
        // the final direction, which the hodge complement supplies below.
        if (kept.size() < n - 1) kept.push_back((1.0 / rn) * r);
    }

    // Deterministic complement fill for degenerate curves: the uniform
    // direction first (the natural zero-sequence axis), then the canonical
    // basis in index order.
    std::size_t candidate = 0;
    while (kept.size() < n - 1) {
        Vec c(n);
        if (candidate == 0) {
            const double u = 1.0 / std::sqrt(static_cast<double>(n));
            for (std::size_t i = 0; i < n; ++i) c[i] = u;
        } else if (candidate <= n) {
            c[candidate - 1] = 1.0;
        } else {
            throw std::logic_error("gram_schmidt_frame: complement fill exhausted");
        }
        ++candidate;
        for (const Vec& q : kept) c -= dot(q, c) * q;
        const double cn = norm(c);
        if (cn <= 1e-8) continue;
        kept.push_back((1.0 / cn) * c);
    }

    frame.vectors = std::move(kept);
    frame.vectors.push_back(hodge_complement(frame.vectors));
    return frame;
}

void align_frame_signs(std::span<GeneralizedFrame> path) {
    for (std::size_t k = 1; k < path.size(); ++k) {
        for (std::size_t i = 0; i < path[k].vectors.size(); ++i) {
            if (dot(path[k].vectors[i], path[k - 1].vectors[i]) < 0.0) path[k].vectors[i] *= -1.0;
        }
    }
}

std::vector<FrameInvariants> generalized_invariants(std::span<const GeneralizedFrame> path,
                                                    std::span<const double> s_dot, double dt) {
    if (path.size() < 3) throw std::invalid_argument("generalized_invariants: need at least 3 samples");
    if (path.size() != s_dot.size())
        throw std::invalid_argument("generalized_invariants: path and s_dot lengths differ");
    if (!(dt > 0.0)) throw std::invalid_argument("generalized_invariants: dt must be > 0");
    const std::size_t n = path.front().dim;
    for (const GeneralizedFrame& f : path) {
        if (f.dim != n || f.vectors.size() != n)
            throw std::invalid_argument("generalized_invariants: inconsistent frame dimensions");
    }
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (dot(path[k].vectors[i], path[k + 1].vectors[i]) < 0.0)
                throw std::invalid_argument(
                    "generalized_invariants: sign-flip discontinuity at sample " + std::to_string(k + 1) +
                    ", vector " + std::to_string(i + 1) + "; run align_frame_signs on the path first");
        }
    }

    std::vector<FrameInvariants> out(path.size());
    for (std::size_t k = 0; k < path.size(); ++k) {
        out[k].chi.assign(n - 1, 0.0);
        out[k].omega_chi.assign(n - 1, 0.0);
    }
    const double inv2dt = 1.0 / (2.0 * dt);
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const Vec fdot = inv2dt * (path[k + 1].vectors[i] - path[k - 1].vectors[i]);
            const double w = dot(fdot, path[k].vectors[i + 1]);
            out[k].omega_chi[i] = w;
            out[k].chi[i] = s_dot[k] > 0.0 ? w / s_dot[k] : 0.0;
        }
        out[k].defined = true;
    }
    return out;
}

}  // namespace waveframe
