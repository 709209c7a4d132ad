#pragma once

#include <complex>
#include <utility>

#include "omforce/params.hpp"
#include "omforce/steady_state.hpp"

namespace omforce {

/// Output-quadrature transfer functions at one analysis frequency.
struct TransferFunctions {
    std::complex<double> p_x;  ///< amplitude-noise channel
    std::complex<double> p_p;  ///< phase-noise channel
    std::complex<double> p_xi; ///< mechanical (force) channel
    std::complex<double> d;    ///< system determinant
};

/// Which closed form produced the breakdown.
enum class SpectrumFormula { Full, Resonant, NoQoc };

const char* to_string(SpectrumFormula formula);

/// Dimensionless added force-noise spectral density at one frequency,
/// split by physical origin. total = thermal + backaction + shot by
/// construction.
struct NoiseBreakdown {
    double omega = 0.0; ///< analysis frequency, rad/s
    double thermal = 0.0;
    double backaction = 0.0;
    double shot = 0.0;
    double total = 0.0;
    SpectrumFormula formula = SpectrumFormula::Full;
};

/// Mechanical susceptibility χ̃_m(ω) = ω_m/(ω² + i·γ_m·ω − ω_m·ω̃_m).
/// Pass omega_m_eff = ω_m for the bare susceptibility.
std::complex<double> mechanical_susceptibility(double omega, const SystemParams& params,
                                               double omega_m_eff);

/// Exact evaluation of P_x, P_p, P_ξ and D at the given frequency.
TransferFunctions transfer_functions(const SystemParams& params, const SteadyState& ss,
                                     double omega);

/// Added force noise from the full transfer functions (any detuning):
///   thermal    = 2·k_B·T/(ħ·ω_m)
///   backaction = |P_x|² / (2·|P_ξ|²)
///   shot       = |P_p − D/√(2κ)|² / (2·|P_ξ|²)
/// Throws UnstableOperatingPoint for an unstable steady state and
/// DivergentSensitivity when the force channel vanishes.
NoiseBreakdown s_ff_full(const SystemParams& params, const SteadyState& ss, double omega);

/// Added force noise in the resonant (Δ̃ = 0, κ ≫ ω) closed form:
///   backaction = (ζ/2γ_m)·(ω_m/ω̃_m)²
///   shot       = (1/(2·ζ·γ_m·|χ̃_m|²))·(ω̃_m/ω_m)²
/// Requires an effective-detuning-zero steady state.
NoiseBreakdown s_ff_resonant(const SystemParams& params, const SteadyState& ss,
                             double omega);

/// The no-QOC limit of the resonant form (bare susceptibility, no soft-mode
/// ratios) plus the thermal floor.
NoiseBreakdown s_ff_no_qoc(const SystemParams& params, const SteadyState& ss,
                           double omega);

/// Power-optimized lower bound 1/(γ_m·|χ̃_m(ω)|) with χ̃_m built from
/// omega_m_eff. omega_m_eff = ω_m gives the standard quantum limit; at
/// ω = ω_m that bound equals 1.
double sql_bound(const SystemParams& params, double omega, double omega_m_eff);

/// Analysis frequency for power sweeps: a fixed value, or the soft-mode
/// resonance sqrt(ω_m·ω̃_m) re-evaluated at every operating point.
struct EvalFrequency {
    enum class Kind { Fixed, SoftModeResonance };
    Kind kind = Kind::Fixed;
    double value = 0.0; ///< rad/s, Fixed only

    static EvalFrequency fixed(double omega) { return {Kind::Fixed, omega}; }
    static EvalFrequency soft_mode_resonance() { return {Kind::SoftModeResonance, 0.0}; }

    double resolve(const SystemParams& params, const SteadyState& ss) const;
};

struct OptimalPowerResult {
    double power = 0.0; ///< W
    double s_min = 0.0; ///< total added noise at the optimum
    bool constrained = false; ///< minimum pinned at a stability boundary
};

/// Minimizes the resonant total noise over drive power inside p_range
/// (golden section on log power, 1e-8 relative tolerance). The analysis
/// frequency resolves per candidate power. Throws BracketError when the
/// bracket holds no interior minimum.
OptimalPowerResult optimal_power(const SystemParams& params, const EvalFrequency& omega,
                                 std::pair<double, double> p_range);

} // namespace omforce
