#include "omforce/presets.hpp"

#include <algorithm>

#include "omforce/errors.hpp"

namespace omforce {

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4"}; }

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ParamFileSpec preset_param_spec(const std::string& name) {
    if (!is_preset(name))
        throw InvalidParameter("unknown preset '" + name + "'");
    ParamFileSpec spec;
    spec.omega_m_hz = 1e7;
    spec.gamma_m_hz = 100.0;
    spec.g_l_hz = 215.0;
    spec.g_q_over_g_l = 0.0;
    spec.kappa_hz = 5e8;
    spec.power_uW = 10.0;
    spec.wavelength_nm = 810.0;
    spec.temperature_K = 0.0;
    spec.detuning_mode = DetuningMode::Effective;
    spec.detuning_hz = 0.0;
    return spec;
}

SweepSpec preset_sweep_spec(const std::string& name, const SystemParams& base) {
    SweepSpec spec;
    spec.base = base;
    spec.formula = SpectrumFormula::Resonant;
    if (name == "fig2") {
        spec.kind = SweepKind::Frequency;
        spec.axis1 = {"omega_rad_s", 0.1 * base.omega_m, 2.0 * base.omega_m, 2000,
                      AxisScale::Linear};
        spec.eval_frequency = EvalFrequency::fixed(base.omega_m);
    } else if (name == "fig3") {
        spec.kind = SweepKind::Power;
        spec.axis1 = {"power_W", 1e-6, 1e-3, 200, AxisScale::Log};
        spec.eval_frequency = EvalFrequency::soft_mode_resonance();
    } else if (name == "fig4") {
        spec.kind = SweepKind::Map2D;
        spec.axis1 = {"power_W", 1e-6, 1e-3, 200, AxisScale::Log};
        spec.axis2 = Axis{"gq_over_gl", -1.0, 0.0, 200, AxisScale::Linear};
        spec.eval_frequency = EvalFrequency::soft_mode_resonance();
    } else {
        throw InvalidParameter("unknown preset '" + name + "'");
    }
    return spec;
}

} // namespace omforce
