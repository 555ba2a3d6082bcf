#pragma once

#include <span>
#include <vector>

#include "waveframe/linalg.hpp"

namespace waveframe {

/// Orthonormal n-frame of an n-phase trajectory. chi/omega_chi are the
/// n-1 generalized curvatures and frequencies; they depend on the frame's
/// time derivative and are populated by generalized_invariants, not by the
/// per-sample construction. rank counts the non-degenerate Gram-Schmidt
/// steps taken on the supplied derivative vectors.
struct GeneralizedFrame {
    std::size_t dim = 0;
    std::vector<Vec> vectors;
    std::vector<double> chi;
    std::vector<double> omega_chi;
    std::size_t rank = 0;
};

/// Rank-aware Gram-Schmidt frame from (v, v', v'', ...). Degenerate steps
/// (residual <= rank_tol * |input|) are skipped; missing directions are
/// filled deterministically, the uniform (zero-sequence) direction first
/// and then the canonical basis, and the last vector is the right-handed
/// hodge_complement of the first n-1. Throws when the first vector is
/// degenerate or more than n vectors are supplied.
GeneralizedFrame gram_schmidt_frame(std::span<const Vec> derivs, double rank_tol = 1e-8);

/// Flip frame vectors so each one has non-negative dot with its
/// predecessor in time. Gram-Schmidt is sign-ambiguous at degenerate
/// steps; differentiation needs continuity.
void align_frame_signs(std::span<GeneralizedFrame> path);

/// Per-sample generalized curvatures and frequencies of a frame path.
struct FrameInvariants {
    std::vector<double> chi;
    std::vector<double> omega_chi;
    bool defined = false;
};

/// omega_chi_i = dot(f_i', f_{i+1}) with f' by central difference,
/// chi_i = omega_chi_i / s_dot. Boundary samples are returned undefined.
/// Throws if a sign-flip discontinuity is present (align first).
std::vector<FrameInvariants> generalized_invariants(std::span<const GeneralizedFrame> path,
                                                    std::span<const double> s_dot, double dt);

}  // namespace waveframe
