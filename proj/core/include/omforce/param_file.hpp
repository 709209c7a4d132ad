#pragma once

#include <optional>
#include <string>

#include "omforce/params.hpp"

namespace omforce {

/// Staged view of the flat `key = value` parameter format, before unit
/// conversion. Accepted keys (case-insensitive):
///   omega_m_hz, gamma_m_hz, g_l_hz, g_q_over_g_l, g_q_rad_s, kappa_hz,
///   power_uW, wavelength_nm, temperature_K, detuning_mode, detuning_hz,
///   mass_kg
/// Frequencies are ordinary frequencies (multiplied by 2π on build);
/// detuning_mode is "bare" or "effective". Unknown keys are an error.
struct ParamFileSpec {
    std::optional<double> omega_m_hz;
    std::optional<double> gamma_m_hz;
    std::optional<double> g_l_hz;
    std::optional<double> g_q_over_g_l;
    std::optional<double> g_q_rad_s;
    std::optional<double> kappa_hz;
    std::optional<double> power_uW;
    std::optional<double> wavelength_nm;
    std::optional<double> temperature_K;
    std::optional<DetuningMode> detuning_mode;
    std::optional<double> detuning_hz;
    std::optional<double> mass_kg;

    /// Applies one key = value assignment; throws InvalidParameter naming
    /// the key on unknown keys or malformed values.
    void set(const std::string& key, const std::string& value);

    /// Converts to SI/rad/s and validates. Missing optional entries default
    /// to: g_q = 0, temperature = 0, effective detuning 0, no mass.
    SystemParams build() const;
};

/// Parses parameter text (one `key = value` per line; blank lines and
/// lines starting with '#' are ignored).
ParamFileSpec parse_param_text(const std::string& text);

/// Reads a parameter file; throws InvalidParameter naming the path when the
/// file cannot be read.
ParamFileSpec load_param_file(const std::string& path);

} // namespace omforce
