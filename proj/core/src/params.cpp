#include "omforce/params.hpp"

#include <cmath>

#include "omforce/constants.hpp"
#include "omforce/errors.hpp"

namespace omforce {

double SystemParams::pump_frequency() const {
    return 2.0 * constants::pi * constants::speed_of_light / wavelength;
}

double SystemParams::pump_amplitude() const {
    return std::sqrt(2.0 * power * kappa / (constants::hbar * pump_frequency()));
}

void SystemParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidParameter(std::string(name) + " must be positive and finite");
    };
    auto non_negative = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidParameter(std::string(name) + " must be non-negative and finite");
    };
    positive(omega_m, "omega_m");
    positive(gamma_m, "gamma_m");
    positive(kappa, "kappa");
    positive(wavelength, "wavelength");
    non_negative(power, "power");
    non_negative(temperature, "temperature");
    non_negative(g_l, "g_l"); // sign convention absorbed into x_s
    if (!std::isfinite(g_q))
        throw InvalidParameter("g_q must be finite");
    if (!std::isfinite(detuning))
        throw InvalidParameter("detuning must be finite");
    if (mass && (!(*mass > 0.0) || !std::isfinite(*mass)))
        throw InvalidParameter("mass must be positive and finite");
}

SystemParams SystemParams::with_power(double p) const {
    SystemParams out = *this;
    out.power = p;
    return out;
}

SystemParams SystemParams::with_coupling_ratio(double gq_over_gl) const {
    SystemParams out = *this;
    out.g_q = gq_over_gl * g_l;
    return out;
}

DerivedScalars derive_scalars(const SystemParams& params, double photon_number) {
    params.validate();
    if (!(photon_number >= 0.0) || !std::isfinite(photon_number))
        throw InvalidParameter("photon_number must be non-negative and finite");
    DerivedScalars out;
    out.epsilon = params.pump_amplitude();
    out.photon_number_nominal = (out.epsilon * out.epsilon) / (params.kappa * params.kappa);
    out.zeta = measurement_strength(params, photon_number);
    return out;
}

double measurement_strength(const SystemParams& params, double photon_number) {
    return 4.0 * params.g_l * params.g_l * photon_number / params.kappa;
}

namespace {

double force_scale_squared(const SystemParams& params) {
    if (!params.mass)
        throw InvalidParameter("mass required for SI conversion");
    return constants::hbar * (*params.mass) * params.omega_m * params.gamma_m;
}

} // namespace

double to_si_spectrum(double s_ff, const SystemParams& params) {
    return force_scale_squared(params) * s_ff;
}

double normalize_force(double f_si, const SystemParams& params) {
    return f_si / std::sqrt(force_scale_squared(params));
}

double thermal_noise_floor(const SystemParams& params) {
    return 2.0 * constants::boltzmann * params.temperature /
           (constants::hbar * params.omega_m);
}

} // namespace omforce
