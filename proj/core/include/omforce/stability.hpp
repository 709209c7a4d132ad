#pragma once

#include <array>
#include <complex>

#include "omforce/params.hpp"
#include "omforce/steady_state.hpp"

namespace omforce {

/// 4x4 drift matrix of the linearized fluctuation dynamics over the basis
/// (δx, δp, δX, δP); entries in rad/s.
struct DriftMatrix {
    std::array<std::array<double, 4>, 4> m{};
};

/// Monic quartic coefficients, ascending powers: a[0] + a[1]s + ... + a[4]s^4,
/// a[4] = 1.
using QuarticCoeffs = std::array<double, 5>;

enum class StabilityStatus { Stable, Marginal, Unstable, Unphysical, Unresolved };

const char* to_string(StabilityStatus status);

struct StabilityReport {
    QuarticCoeffs char_poly{}; ///< det(sI − M), NaN-filled when unavailable
    bool routh_hurwitz_stable = false;
    bool eigen_stable = false; ///< all eigenvalue real parts < 0
    bool physical = false;     ///< ω̃_m > 0
    double max_real_part = 0.0; ///< rad/s
    StabilityStatus status = StabilityStatus::Unresolved;
};

/// Drift matrix of the linearized dynamics at a steady state.
DriftMatrix build_drift_matrix(const SystemParams& params, const SteadyState& ss);

/// Characteristic polynomial det(sI − M) in closed form:
/// (s² + γ_m·s + ω_m·ω̃_m)·((s+κ)² + Δ̃²) − 2·G̃²·I·Δ̃·ω_m.
QuarticCoeffs characteristic_polynomial(const SystemParams& params, const SteadyState& ss);

/// True iff every root of the monic quartic has a negative real part:
/// a0, a1, a2, a3 > 0 and a3·a2·a1 − a1² − a3²·a0 > 0.
/// Throws InvalidParameter on non-finite or non-monic input.
bool routh_hurwitz(const QuarticCoeffs& coeffs);

/// Eigenvalues of the drift matrix (numeric, the independent check on the
/// Routh–Hurwitz verdict).
std::array<std::complex<double>, 4> drift_eigenvalues(const DriftMatrix& matrix);

/// Largest eigenvalue real part of the drift matrix, rad/s.
double max_real_part(const DriftMatrix& matrix);

/// Classification margin: |max real part| <= margin counts as marginal.
double marginal_band(const SystemParams& params);

/// Full classification of a parameter point: solves the steady state,
/// evaluates both stability routes and the soft-mode physicality condition.
/// Solver non-convergence yields status Unresolved rather than an exception.
StabilityReport classify(const SystemParams& params);

/// Same classification for an already-solved steady state.
StabilityReport classify_state(const SystemParams& params, const SteadyState& ss);

} // namespace omforce
