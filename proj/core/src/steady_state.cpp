#include "omforce/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "omforce/errors.hpp"

namespace omforce {

namespace {

constexpr double kFixedPointDamping = 0.5;
constexpr int kFixedPointBudget = 100000;
constexpr double kFixedPointTol = 1e-13;
constexpr int kScanPoints = 4096;
constexpr double kBisectionTol = 1e-12;

double soft_mode_frequency(const SystemParams& p, double photon_number) {
    return p.omega_m + 2.0 * p.g_q * photon_number;
}

double displacement_of(const SystemParams& p, double photon_number) {
    if (photon_number == 0.0)
        return 0.0;
    return -p.g_l * photon_number / soft_mode_frequency(p, photon_number);
}

double bare_delta_eff(const SystemParams& p, double photon_number) {
    const double x = displacement_of(p, photon_number);
    return p.detuning + p.g_l * x + p.g_q * x * x;
}

SteadyState make_state(const SystemParams& p, double photon_number, double delta_eff) {
    SteadyState ss;
    ss.photon_number = photon_number;
    ss.omega_m_eff = soft_mode_frequency(p, photon_number);
    ss.x_s = displacement_of(p, photon_number);
    ss.delta_eff = delta_eff;
    ss.g_eff = p.g_l + 2.0 * p.g_q * ss.x_s;
    const double eps = p.pump_amplitude();
    if (eps == 0.0)
        ss.c_s = {0.0, 0.0};
    else
        ss.c_s = eps / std::complex<double>(p.kappa, delta_eff);
    ss.x_quad = std::numbers::sqrt2 * ss.c_s.real();
    ss.p_quad = std::numbers::sqrt2 * ss.c_s.imag();
    return ss;
}

// Photon-number map of the bare-detuning self-consistency,
// I -> eps^2 / (kappa^2 + delta_eff(I)^2).
double photon_map(const SystemParams& p, double eps2, double photon_number) {
    const double d = bare_delta_eff(p, photon_number);
    return eps2 / (p.kappa * p.kappa + d * d);
}

// Scalar residual whose roots are the self-consistent photon numbers,
// g(I) = I*(kappa^2 + delta_eff(I)^2) - eps^2.
double root_function(const SystemParams& p, double eps2, double photon_number) {
    const double d = bare_delta_eff(p, photon_number);
    return photon_number * (p.kappa * p.kappa + d * d) - eps2;
}

double bisect_root(const SystemParams& p, double eps2, double lo, double hi,
                   double f_lo) {
    for (int i = 0; i < 500 && (hi - lo) > kBisectionTol * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = root_function(p, eps2, mid);
        if (f_mid == 0.0)
            return mid;
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All sign-change roots of g on (0, i_max], ascending.
std::vector<double> scan_roots(const SystemParams& p, double eps2, double i_max) {
    std::vector<double> roots;
    const double step = i_max / kScanPoints;
    double prev_i = 0.0;
    double prev_f = -eps2; // g(0)
    for (int k = 1; k <= kScanPoints; ++k) {
        const double cur_i = (k == kScanPoints) ? i_max : k * step;
        const double cur_f = root_function(p, eps2, cur_i);
        if (!std::isfinite(cur_f)) { // pole of x_s(I); g -> +inf on both sides
            prev_i = cur_i;
            prev_f = cur_f;
            continue;
        }
        if (cur_f == 0.0) {
            roots.push_back(cur_i);
        } else if (std::isfinite(prev_f) && prev_f != 0.0 &&
                   (prev_f < 0.0) != (cur_f < 0.0)) {
            roots.push_back(bisect_root(p, eps2, prev_i, cur_i, prev_f));
        }
        prev_i = cur_i;
        prev_f = cur_f;
    }
    return roots;
}

SteadyState solve_impl(const SystemParams& params) {
    params.validate();
    const double eps = params.pump_amplitude();

    if (eps == 0.0)
        return make_state(params, 0.0, params.detuning);

    if (params.detuning_mode == DetuningMode::Effective) {
        const double d = params.detuning;
        const double photon_number =
            (eps * eps) / (params.kappa * params.kappa + d * d);
        return make_state(params, photon_number, d);
    }

    const double eps2 = eps * eps;
    const double i_cap = eps2 / (params.kappa * params.kappa); // I <= eps^2/kappa^2 always

    // Damped fixed-point iteration from the resonant photon number.
    double photon_number = i_cap;
    bool converged = false;
    for (int it = 0; it < kFixedPointBudget; ++it) {
        const double mapped = photon_map(params, eps2, photon_number);
        if (!std::isfinite(mapped))
            break;
        const double next = (1.0 - kFixedPointDamping) * photon_number +
                            kFixedPointDamping * mapped;
        const double scale = std::max(next, std::numeric_limits<double>::min());
        if (std::abs(next - photon_number) <= kFixedPointTol * scale) {
            photon_number = next;
            converged = true;
            break;
        }
        photon_number = next;
    }

    // The fixed point can land on an upper branch when the response is
    // multivalued; the returned solution must be the branch continuously
    // connected to I = 0, i.e. the smallest root.
    const std::vector<double> roots =
        scan_roots(params, eps2, i_cap * (1.0 + 1e-12));
    if (!roots.empty()) {
        const double smallest = roots.front();
        if (!converged || smallest < photon_number * (1.0 - 1e-6))
            photon_number = smallest;
    } else if (!converged) {
        throw NonConvergence(
            "steady-state iteration did not converge and no photon-number root "
            "was bracketed (bistable or critical drive regime)");
    }

    return make_state(params, photon_number, bare_delta_eff(params, photon_number));
}

} // namespace

SteadyState solve_steady_state_unchecked(const SystemParams& params) {
    return solve_impl(params);
}

SteadyState solve_steady_state(const SystemParams& params) {
    SteadyState ss = solve_impl(params);
    if (!(ss.omega_m_eff > 0.0))
        throw UnphysicalSoftMode(
            "effective mechanical frequency is non-positive (2*g_q*I <= -omega_m); "
            "operating point is unphysical");
    return ss;
}

std::pair<double, double> steady_state_residual(const SystemParams& params,
                                                const SteadyState& candidate) {
    const double photon_number = candidate.photon_number;
    const double omega_eff = params.omega_m + 2.0 * params.g_q * photon_number;

    const double term_x = candidate.x_s * omega_eff;
    const double term_drive = params.g_l * photon_number;
    const double num1 = std::abs(term_x + term_drive);
    const double den1 = std::abs(term_x) + std::abs(term_drive);
    const double r1 = (num1 == 0.0) ? 0.0 : num1 / den1;

    const double delta = (params.detuning_mode == DetuningMode::Bare)
                             ? params.detuning + params.g_l * candidate.x_s +
                                   params.g_q * candidate.x_s * candidate.x_s
                             : params.detuning;
    const double eps = params.pump_amplitude();
    const std::complex<double> lhs =
        candidate.c_s * std::complex<double>(params.kappa, delta) - eps;
    const double num2 = std::abs(lhs);
    const double den2 =
        std::max(eps, std::abs(candidate.c_s) * std::hypot(params.kappa, delta));
    const double r2 = (num2 == 0.0) ? 0.0 : num2 / den2;

    return {r1, r2};
}

std::vector<SteadyState> find_all_branches(const SystemParams& params, double i_max) {
    params.validate();
    if (!(i_max > 0.0) || !std::isfinite(i_max))
        throw InvalidParameter("i_max must be positive and finite");

    const double eps = params.pump_amplitude();
    if (eps == 0.0)
        return {make_state(params, 0.0, params.detuning)};

    if (params.detuning_mode == DetuningMode::Effective)
        return {solve_impl(params)};

    const double eps2 = eps * eps;
    std::vector<SteadyState> out;
    for (double root : scan_roots(params, eps2, i_max))
        out.push_back(make_state(params, root, bare_delta_eff(params, root)));
    return out;
}

} // namespace omforce
