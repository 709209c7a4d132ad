#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "omforce/params.hpp"

namespace omforce {

/// Self-consistent mean-field solution of the driven cavity + oscillator.
struct SteadyState {
    double x_s = 0.0;                    ///< static mechanical displacement (dimensionless)
    std::complex<double> c_s{0.0, 0.0};  ///< cavity amplitude (dimensionless)
    double photon_number = 0.0;          ///< I = |c_s|²
    double omega_m_eff = 0.0;            ///< ω̃_m = ω_m + 2·g_q·I, rad/s
    double g_eff = 0.0;                  ///< G̃ = g_l + 2·g_q·x_s, rad/s
    double delta_eff = 0.0;              ///< Δ̃ = Δ + g_l·x_s + g_q·x_s², rad/s
    double x_quad = 0.0;                 ///< X_s = (c_s + c_s*)/√2
    double p_quad = 0.0;                 ///< P_s = (c_s − c_s*)/(√2·i)
};

/// Solves the mean-field equations.
///
/// Bare mode: the photon number solves I = ε²/(κ² + Δ̃(I)²) with
/// Δ̃(I) = Δ + g_l·x_s(I) + g_q·x_s(I)² and x_s(I) = −g_l·I/(ω_m + 2·g_q·I).
/// When several branches coexist the one continuously connected to I = 0
/// (smallest I) is returned; see find_all_branches for the rest.
///
/// Effective mode: Δ̃ is pinned to the given value and I = ε²/(κ² + Δ̃²)
/// directly.
///
/// Throws NonConvergence if no root can be located, and UnphysicalSoftMode
/// if ω̃_m ≤ 0 at the solution.
SteadyState solve_steady_state(const SystemParams& params);

/// Same as solve_steady_state but without the ω̃_m > 0 physicality gate.
/// Used by the stability classifier, which reports unphysical points
/// instead of rejecting them.
SteadyState solve_steady_state_unchecked(const SystemParams& params);

/// Relative residuals of the two mean-field equations for a candidate
/// solution: first the x_s equation, then the c_s equation. Both are zero
/// for an exact solution.
std::pair<double, double> steady_state_residual(const SystemParams& params,
                                                const SteadyState& candidate);

/// Finds every self-consistent photon-number root in (0, i_max] by
/// sign-change bracketing on a dense grid, each bracket refined by
/// bisection to 1e-12 relative tolerance. Roots are returned sorted by
/// photon number, without the physicality gate. An empty list means no
/// root in range. In Effective mode the single pinned solution is returned.
std::vector<SteadyState> find_all_branches(const SystemParams& params, double i_max);

} // namespace omforce
