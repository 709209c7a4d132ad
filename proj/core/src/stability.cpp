#include "omforce/stability.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "omforce/errors.hpp"

namespace omforce {

const char* to_string(StabilityStatus status) {
    switch (status) {
    case StabilityStatus::Stable: return "stable";
    case StabilityStatus::Marginal: return "marginal";
    case StabilityStatus::Unstable: return "unstable";
    case StabilityStatus::Unphysical: return "unphysical";
    case StabilityStatus::Unresolved: return "unresolved";
    }
    return "unknown";
}

DriftMatrix build_drift_matrix(const SystemParams& params, const SteadyState& ss) {
    const double gx = ss.g_eff * ss.x_quad;
    const double gp = ss.g_eff * ss.p_quad;
    DriftMatrix out;
    out.m = {{{0.0, params.omega_m, 0.0, 0.0},
              {-ss.omega_m_eff, -params.gamma_m, -gx, -gp},
              {gp, 0.0, -params.kappa, ss.delta_eff},
              {-gx, 0.0, -ss.delta_eff, -params.kappa}}};
    return out;
}

QuarticCoeffs characteristic_polynomial(const SystemParams& params,
                                        const SteadyState& ss) {
    // det(sI - M) = (s^2 + gamma_m s + W)(s^2 + 2 kappa s + kappa^2 + dt^2) - E
    // with W = omega_m * omega_m_eff and E = 2 G^2 I dt omega_m.
    const double w = params.omega_m * ss.omega_m_eff;
    const double k = params.kappa;
    const double dt = ss.delta_eff;
    const double g = params.gamma_m;
    const double opt = k * k + dt * dt;
    const double coupling =
        2.0 * ss.g_eff * ss.g_eff * ss.photon_number * dt * params.omega_m;
    return {w * opt - coupling,
            g * opt + 2.0 * k * w,
            opt + 2.0 * k * g + w,
            g + 2.0 * k,
            1.0};
}

bool routh_hurwitz(const QuarticCoeffs& coeffs) {
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw InvalidParameter("routh_hurwitz: non-finite polynomial coefficient");
    if (coeffs[4] != 1.0)
        throw InvalidParameter("routh_hurwitz: polynomial must be monic (a4 = 1)");
    const double a0 = coeffs[0], a1 = coeffs[1], a2 = coeffs[2], a3 = coeffs[3];
    if (!(a0 > 0.0 && a1 > 0.0 && a2 > 0.0 && a3 > 0.0))
        return false;
    return a3 * a2 * a1 - a1 * a1 - a3 * a3 * a0 > 0.0;
}

std::array<std::complex<double>, 4> drift_eigenvalues(const DriftMatrix& matrix) {
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m(r, c) = matrix.m[static_cast<size_t>(r)][static_cast<size_t>(c)];
    Eigen::EigenSolver<Eigen::Matrix4d> solver(m, /*computeEigenvectors=*/false);
    std::array<std::complex<double>, 4> out;
    for (int i = 0; i < 4; ++i)
        out[static_cast<size_t>(i)] = solver.eigenvalues()(i);
    return out;
}

double max_real_part(const DriftMatrix& matrix) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& ev : drift_eigenvalues(matrix))
        worst = std::max(worst, ev.real());
    return worst;
}

double marginal_band(const SystemParams& params) {
    return 1e-6 * params.kappa;
}

StabilityReport classify_state(const SystemParams& params, const SteadyState& ss) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    StabilityReport report;
    report.physical = ss.omega_m_eff > 0.0;

    const bool finite_state = std::isfinite(ss.x_s) && std::isfinite(ss.delta_eff) &&
                              std::isfinite(ss.g_eff);
    if (!finite_state) {
        report.char_poly = {nan, nan, nan, nan, nan};
        report.max_real_part = nan;
        report.status = StabilityStatus::Unphysical;
        return report;
    }

    report.char_poly = characteristic_polynomial(params, ss);
    report.routh_hurwitz_stable = routh_hurwitz(report.char_poly);
    report.max_real_part = max_real_part(build_drift_matrix(params, ss));
    report.eigen_stable = report.max_real_part < 0.0;

    if (!report.physical) {
        // The linear analysis already flags these points (a0 <= 0), but the
        // soft-mode collapse is reported as its own category.
        report.routh_hurwitz_stable = false;
        report.eigen_stable = false;
        report.status = StabilityStatus::Unphysical;
    } else if (std::abs(report.max_real_part) <= marginal_band(params)) {
        report.status = StabilityStatus::Marginal;
    } else if (report.eigen_stable) {
        report.status = StabilityStatus::Stable;
    } else {
        report.status = StabilityStatus::Unstable;
    }
    return report;
}

StabilityReport classify(const SystemParams& params) {
    SteadyState ss;
    try {
        ss = solve_steady_state_unchecked(params);
    } catch (const NonConvergence&) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        StabilityReport report;
        report.char_poly = {nan, nan, nan, nan, nan};
        report.max_real_part = nan;
        report.status = StabilityStatus::Unresolved;
        return report;
    }
    return classify_state(params, ss);
}

} // namespace omforce
