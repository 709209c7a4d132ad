#pragma once

#include <numbers>

namespace omforce::constants {

// 2019 SI defining constants (CODATA, exact).
inline constexpr double pi = std::numbers::pi_v<double>;

/// h — Planck constant [J·s].
inline constexpr double planck = 6.62607015e-34;

/// ħ — reduced Planck constant [J·s].
inline constexpr double hbar = planck / (2.0 * pi);

/// k_B — Boltzmann constant [J·K⁻¹].
inline constexpr double boltzmann = 1.380649e-23;

/// c — speed of light in vacuum [m·s⁻¹].
inline constexpr double speed_of_light = 299792458.0;

} // namespace omforce::constants
