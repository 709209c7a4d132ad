#pragma once

#include <string>
#include <vector>

#include "omforce/param_file.hpp"
#include "omforce/sweep.hpp"

namespace omforce {

/// Built-in parameter presets reproducing the reference configuration:
/// ω_m/2π = 10 MHz, γ_m/2π = 100 Hz, g_l/2π = 215 Hz, κ/2π = 500 MHz,
/// λ = 810 nm, T = 0, effective detuning 0.
///   fig2 — 10 µW drive, spectrum vs frequency (0.1..2 ω_m, 2000 points)
///   fig3 — noise decomposition vs power (1 µW .. 1 mW, log, 200 points)
///   fig4 — (power × g_q/g_l) sensitivity map (200 × 200, soft-mode tracked)
std::vector<std::string> preset_names();

bool is_preset(const std::string& name);

/// Parameter stage of a preset (overridable with --set before building).
ParamFileSpec preset_param_spec(const std::string& name);

/// Sweep specification of a preset, built on top of (possibly overridden)
/// base parameters.
SweepSpec preset_sweep_spec(const std::string& name, const SystemParams& base);

} // namespace omforce
