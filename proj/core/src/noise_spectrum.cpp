#include "omforce/noise_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "omforce/errors.hpp"
#include "omforce/stability.hpp"

namespace omforce {

const char* to_string(SpectrumFormula formula) {
    switch (formula) {
    case SpectrumFormula::Full: return "full";
    case SpectrumFormula::Resonant: return "resonant";
    case SpectrumFormula::NoQoc: return "no_qoc";
    }
    return "unknown";
}

std::complex<double> mechanical_susceptibility(double omega, const SystemParams& params,
                                               double omega_m_eff) {
    const std::complex<double> denom(omega * omega - params.omega_m * omega_m_eff,
                                     params.gamma_m * omega);
    return params.omega_m / denom;
}

TransferFunctions transfer_functions(const SystemParams& params, const SteadyState& ss,
                                     double omega) {
    const std::complex<double> mech(omega * omega - params.omega_m * ss.omega_m_eff,
                                    params.gamma_m * omega); // ω² + iγ_mω − ω_m·ω̃_m
    const std::complex<double> kmi(params.kappa, -omega);    // κ − iω
    const double sqrt_2k = std::sqrt(2.0 * params.kappa);
    const double g2 = ss.g_eff * ss.g_eff;
    const double dt = ss.delta_eff;

    TransferFunctions tf;
    tf.p_x = -sqrt_2k * (params.omega_m * g2 * ss.x_quad * ss.x_quad + dt * mech);
    tf.p_p = -sqrt_2k * (params.omega_m * g2 * ss.x_quad * ss.p_quad - kmi * mech);
    tf.p_xi = ss.g_eff * params.omega_m * std::sqrt(params.gamma_m) *
              (kmi * ss.x_quad + ss.p_quad * dt);
    tf.d = (kmi * kmi + dt * dt) * mech +
           2.0 * g2 * ss.photon_number * dt * params.omega_m;
    return tf;
}

namespace {

void require_stable(const SystemParams& params, const SteadyState& ss) {
    if (!(ss.omega_m_eff > 0.0))
        throw UnphysicalSoftMode("noise spectrum undefined: soft mode has collapsed "
                                 "(omega_m_eff <= 0)");
    if (!routh_hurwitz(characteristic_polynomial(params, ss)))
        throw UnstableOperatingPoint(
            "noise spectrum undefined: linearized dynamics are unstable");
}

NoiseBreakdown assemble(double omega, double thermal, double backaction, double shot,
                        SpectrumFormula formula) {
    NoiseBreakdown out;
    out.omega = omega;
    out.thermal = thermal;
    out.backaction = backaction;
    out.shot = shot;
    out.total = thermal + backaction + shot;
    out.formula = formula;
    return out;
}

} // namespace

NoiseBreakdown s_ff_full(const SystemParams& params, const SteadyState& ss,
                         double omega) {
    require_stable(params, ss);
    const TransferFunctions tf = transfer_functions(params, ss, omega);
    const double signal = std::norm(tf.p_xi);
    if (signal == 0.0)
        throw DivergentSensitivity("force channel P_xi vanishes; the measurement "
                                   "carries no force signal");
    const std::complex<double> phase_out = tf.p_p - tf.d / std::sqrt(2.0 * params.kappa);
    return assemble(omega, thermal_noise_floor(params),
                    std::norm(tf.p_x) / (2.0 * signal),
                    std::norm(phase_out) / (2.0 * signal), SpectrumFormula::Full);
}

NoiseBreakdown s_ff_resonant(const SystemParams& params, const SteadyState& ss,
                             double omega) {
    if (std::abs(ss.delta_eff) > 1e-9 * params.kappa)
        throw InvalidParameter(
            "s_ff_resonant requires an effective-detuning-zero steady state");
    if (!(ss.omega_m_eff > 0.0))
        throw UnphysicalSoftMode("noise spectrum undefined: soft mode has collapsed "
                                 "(omega_m_eff <= 0)");
    const double zeta = measurement_strength(params, ss.photon_number);
    if (zeta == 0.0)
        throw DivergentSensitivity("zero measurement strength (no drive or no linear "
                                   "coupling); shot noise diverges");
    const double ratio = params.omega_m / ss.omega_m_eff; // ω_m/ω̃_m
    const double chi2 =
        std::norm(mechanical_susceptibility(omega, params, ss.omega_m_eff));
    const double backaction = zeta / (2.0 * params.gamma_m) * ratio * ratio;
    const double shot = 1.0 / (2.0 * zeta * params.gamma_m * chi2) / (ratio * ratio);
    return assemble(omega, thermal_noise_floor(params), backaction, shot,
                    SpectrumFormula::Resonant);
}

NoiseBreakdown s_ff_no_qoc(const SystemParams& params, const SteadyState& ss,
                           double omega) {
    const double zeta = measurement_strength(params, ss.photon_number);
    if (zeta == 0.0)
        throw DivergentSensitivity("zero measurement strength (no drive or no linear "
                                   "coupling); shot noise diverges");
    const double chi2 =
        std::norm(mechanical_susceptibility(omega, params, params.omega_m));
    return assemble(omega, thermal_noise_floor(params), zeta / (2.0 * params.gamma_m),
                    1.0 / (2.0 * zeta * params.gamma_m * chi2), SpectrumFormula::NoQoc);
}

double sql_bound(const SystemParams& params, double omega, double omega_m_eff) {
    return 1.0 /
           (params.gamma_m *
            std::abs(mechanical_susceptibility(omega, params, omega_m_eff)));
}

double EvalFrequency::resolve(const SystemParams& params, const SteadyState& ss) const {
    if (kind == Kind::Fixed)
        return value;
    if (!(ss.omega_m_eff > 0.0))
        throw UnphysicalSoftMode(
            "soft-mode resonance undefined: omega_m_eff <= 0");
    return std::sqrt(params.omega_m * ss.omega_m_eff);
}

namespace {

std::optional<double> try_total(const SystemParams& base, const EvalFrequency& omega,
                                double power) {
    try {
        const SystemParams at_power = base.with_power(power);
        const SteadyState ss = solve_steady_state(at_power);
        return s_ff_resonant(at_power, ss, omega.resolve(at_power, ss)).total;
    } catch (const UnphysicalSoftMode&) {
    } catch (const UnstableOperatingPoint&) {
    } catch (const DivergentSensitivity&) {
    } catch (const NonConvergence&) {
    }
    return std::nullopt;
}

} // namespace

OptimalPowerResult optimal_power(const SystemParams& params, const EvalFrequency& omega,
                                 std::pair<double, double> p_range) {
    params.validate();
    if (params.detuning_mode != DetuningMode::Effective || params.detuning != 0.0)
        throw InvalidParameter(
            "optimal_power minimizes the resonant form; parameters must pin the "
            "effective detuning to zero");
    const auto [p_lo, p_hi] = p_range;
    if (!(p_lo > 0.0) || !std::isfinite(p_hi))
        throw InvalidParameter("power bracket must be positive and finite");
    if (!(p_lo < p_hi))
        throw BracketError("power bracket is empty");

    constexpr int kScan = 129;
    const double log_lo = std::log(p_lo);
    const double log_hi = std::log(p_hi);
    std::vector<std::optional<double>> values(kScan);
    std::vector<double> grid(kScan);
    int best = -1;
    for (int i = 0; i < kScan; ++i) {
        grid[static_cast<size_t>(i)] =
            std::exp(log_lo + (log_hi - log_lo) * i / (kScan - 1));
        values[static_cast<size_t>(i)] = try_total(params, omega, grid[static_cast<size_t>(i)]);
        if (values[static_cast<size_t>(i)] &&
            (best < 0 || *values[static_cast<size_t>(i)] < *values[static_cast<size_t>(best)]))
            best = i;
    }
    if (best < 0)
        throw BracketError("no stable operating point inside the power bracket");
    if (best == 0 || best == kScan - 1)
        throw BracketError("no interior minimum inside the power bracket");

    const bool left_ok = values[static_cast<size_t>(best - 1)].has_value();
    const bool right_ok = values[static_cast<size_t>(best + 1)].has_value();
    const bool constrained = !left_ok || !right_ok;

    double a = std::log(left_ok ? grid[static_cast<size_t>(best - 1)]
                                : grid[static_cast<size_t>(best)]);
    double b = std::log(right_ok ? grid[static_cast<size_t>(best + 1)]
                                 : grid[static_cast<size_t>(best)]);
    double best_power = grid[static_cast<size_t>(best)];
    double best_value = *values[static_cast<size_t>(best)];

    const auto probe = [&](double log_p) {
        const double p = std::exp(log_p);
        const auto v = try_total(params, omega, p);
        if (v && *v < best_value) {
            best_value = *v;
            best_power = p;
        }
        return v ? *v : std::numeric_limits<double>::infinity();
    };

    constexpr double inv_phi = 0.6180339887498949;
    constexpr double tol = 1e-8; // relative in power (absolute in log power)
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = probe(c);
    double fd = probe(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = probe(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = probe(d);
        }
    }

    return {best_power, best_value, constrained};
}

} // namespace omforce
