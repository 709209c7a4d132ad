#include "omforce/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

#include <nlohmann/json.hpp>

#include "omforce/errors.hpp"

namespace omforce {

namespace {

void validate_axis(const Axis& axis, bool allow_degenerate) {
    if (axis.n_points < 2)
        throw InvalidParameter("axis '" + axis.name + "': n_points must be >= 2");
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max))
        throw InvalidParameter("axis '" + axis.name + "': bounds must be finite");
    if (axis.min > axis.max)
        throw InvalidParameter("axis '" + axis.name + "': min must not exceed max");
    if (!allow_degenerate && axis.min == axis.max)
        throw InvalidParameter("axis '" + axis.name + "': zero-width range");
    if (axis.scale == AxisScale::Log && !(axis.min > 0.0))
        throw InvalidParameter("axis '" + axis.name + "': log scale requires min > 0");
}

NoiseBreakdown evaluate_formula(const SystemParams& params, const SteadyState& ss,
                                double omega, SpectrumFormula formula) {
    switch (formula) {
    case SpectrumFormula::Full: return s_ff_full(params, ss, omega);
    case SpectrumFormula::Resonant: return s_ff_resonant(params, ss, omega);
    case SpectrumFormula::NoQoc: return s_ff_no_qoc(params, ss, omega);
    }
    throw InvalidParameter("unknown spectrum formula");
}

// A grid point whose stationary spectrum exists but cannot be evaluated
// (e.g. zero measurement strength) is reported as unresolved rather than
// being skipped or given sentinel numerics.
SweepRow evaluate_point(const SystemParams& params, const EvalFrequency& eval_frequency,
                        SpectrumFormula formula, double axis1_value,
                        std::optional<double> axis2_value) {
    SweepRow row;
    row.axis1_value = axis1_value;
    row.axis2_value = axis2_value;

    const StabilityReport report = classify(params);
    if (report.status != StabilityStatus::Stable) {
        row.status = report.status;
        return row;
    }
    try {
        const SteadyState ss = solve_steady_state(params);
        const double omega = eval_frequency.resolve(params, ss);
        row.breakdown = evaluate_formula(params, ss, omega, formula);
        row.status = StabilityStatus::Stable;
    } catch (const Error&) {
        row.status = StabilityStatus::Unresolved;
    }
    return row;
}

long long now_unix() { return static_cast<long long>(std::time(nullptr)); }

} // namespace

std::vector<double> axis_grid(const Axis& axis) {
    const int n = axis.n_points;
    std::vector<double> grid(static_cast<size_t>(n));
    if (axis.scale == AxisScale::Linear) {
        const double step = (axis.max - axis.min) / (n - 1);
        for (int k = 0; k < n; ++k)
            grid[static_cast<size_t>(k)] = axis.min + k * step;
    } else {
        const double log_min = std::log(axis.min);
        const double step = (std::log(axis.max) - log_min) / (n - 1);
        for (int k = 0; k < n; ++k)
            grid[static_cast<size_t>(k)] = std::exp(log_min + k * step);
    }
    grid.front() = axis.min;
    grid.back() = axis.max;
    return grid;
}

SweepResult run_frequency_sweep(const SweepSpec& spec) {
    if (spec.kind != SweepKind::Frequency)
        throw InvalidParameter("run_frequency_sweep requires a FrequencySweep spec");
    validate_axis(spec.axis1, /*allow_degenerate=*/true);
    spec.base.validate();

    const StabilityReport report = classify(spec.base);
    if (report.status != StabilityStatus::Stable)
        throw UnstableBasePoint(
            std::string("frequency sweep rejected: base operating point is ") +
                to_string(report.status),
            report);
    const SteadyState ss = solve_steady_state(spec.base);

    SweepResult result;
    result.kind = SweepKind::Frequency;
    result.axis_names = {spec.axis1.name.empty() ? "omega_rad_s" : spec.axis1.name};
    result.base = spec.base;
    result.formula = spec.formula;
    result.created_at_unix_s = now_unix();
    for (double omega : axis_grid(spec.axis1)) {
        SweepRow row;
        row.axis1_value = omega;
        row.breakdown = evaluate_formula(spec.base, ss, omega, spec.formula);
        row.status = StabilityStatus::Stable;
        result.rows.push_back(row);
    }
    return result;
}

SweepResult run_power_sweep(const SweepSpec& spec) {
    if (spec.kind != SweepKind::Power)
        throw InvalidParameter("run_power_sweep requires a PowerSweep spec");
    validate_axis(spec.axis1, /*allow_degenerate=*/false);
    spec.base.validate();

    SweepResult result;
    result.kind = SweepKind::Power;
    result.axis_names = {spec.axis1.name.empty() ? "power_W" : spec.axis1.name};
    result.base = spec.base;
    result.formula = spec.formula;
    result.created_at_unix_s = now_unix();
    for (double power : axis_grid(spec.axis1))
        result.rows.push_back(evaluate_point(spec.base.with_power(power),
                                             spec.eval_frequency, spec.formula, power,
                                             std::nullopt));
    return result;
}

SweepResult run_map(const SweepSpec& spec) {
    if (spec.kind != SweepKind::Map2D)
        throw InvalidParameter("run_map requires a Map2D spec");
    if (!spec.axis2)
        throw InvalidParameter("Map2D requires a second axis");
    validate_axis(spec.axis1, /*allow_degenerate=*/false);
    validate_axis(*spec.axis2, /*allow_degenerate=*/false);
    spec.base.validate();

    SweepResult result;
    result.kind = SweepKind::Map2D;
    result.axis_names = {spec.axis1.name.empty() ? "power_W" : spec.axis1.name,
                         spec.axis2->name.empty() ? "gq_over_gl" : spec.axis2->name};
    result.base = spec.base;
    result.formula = spec.formula;
    result.created_at_unix_s = now_unix();
    const std::vector<double> ratios = axis_grid(*spec.axis2);
    for (double power : axis_grid(spec.axis1)) {
        for (double ratio : ratios) {
            const SystemParams point =
                spec.base.with_power(power).with_coupling_ratio(ratio);
            result.rows.push_back(evaluate_point(point, spec.eval_frequency,
                                                 spec.formula, power, ratio));
        }
    }
    return result;
}

std::vector<StabilityMapRow> run_stability_map(const SystemParams& base,
                                               const Axis& power_axis,
                                               const Axis& ratio_axis) {
    validate_axis(power_axis, /*allow_degenerate=*/false);
    validate_axis(ratio_axis, /*allow_degenerate=*/false);
    base.validate();
    std::vector<StabilityMapRow> rows;
    const std::vector<double> ratios = axis_grid(ratio_axis);
    for (double power : axis_grid(power_axis)) {
        for (double ratio : ratios) {
            const SystemParams point = base.with_power(power).with_coupling_ratio(ratio);
            rows.push_back({power, ratio, classify(point).status});
        }
    }
    return rows;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_breakdown_fields(std::ostream& os, const SweepRow& row) {
    if (row.breakdown) {
        const NoiseBreakdown& b = *row.breakdown;
        os << fmt17(b.omega) << ',' << fmt17(b.thermal) << ',' << fmt17(b.backaction)
           << ',' << fmt17(b.shot) << ',' << fmt17(b.total);
    } else {
        os << ",,,,";
    }
}

nlohmann::json params_json(const SystemParams& p) {
    nlohmann::json j{
        {"omega_m_rad_s", p.omega_m},
        {"gamma_m_rad_s", p.gamma_m},
        {"g_l_rad_s", p.g_l},
        {"g_q_rad_s", p.g_q},
        {"kappa_rad_s", p.kappa},
        {"power_W", p.power},
        {"wavelength_m", p.wavelength},
        {"temperature_K", p.temperature},
        {"detuning_mode", p.detuning_mode == DetuningMode::Bare ? "bare" : "effective"},
        {"detuning_rad_s", p.detuning},
    };
    if (p.mass)
        j["mass_kg"] = *p.mass;
    else
        j["mass_kg"] = nullptr;
    return j;
}

const char* kind_name(SweepKind kind) {
    switch (kind) {
    case SweepKind::Frequency: return "frequency_sweep";
    case SweepKind::Power: return "power_sweep";
    case SweepKind::Map2D: return "map2d";
    }
    return "unknown";
}

} // namespace

void write_csv(const SweepResult& result, std::ostream& os) {
    switch (result.kind) {
    case SweepKind::Frequency:
        os << "omega_rad_s,omega_over_omega_m,thermal,backaction,shot,total,formula\n";
        for (const SweepRow& row : result.rows) {
            const NoiseBreakdown& b = *row.breakdown;
            os << fmt17(b.omega) << ',' << fmt17(b.omega / result.base.omega_m) << ','
               << fmt17(b.thermal) << ',' << fmt17(b.backaction) << ','
               << fmt17(b.shot) << ',' << fmt17(b.total) << ','
               << to_string(b.formula) << '\n';
        }
        break;
    case SweepKind::Power:
        os << "power_W,omega_rad_s,thermal,backaction,shot,total,status\n";
        for (const SweepRow& row : result.rows) {
            os << fmt17(row.axis1_value) << ',';
            write_breakdown_fields(os, row);
            os << ',' << to_string(row.status) << '\n';
        }
        break;
    case SweepKind::Map2D:
        os << "power_W,gq_over_gl,omega_rad_s,thermal,backaction,shot,total,status\n";
        for (const SweepRow& row : result.rows) {
            os << fmt17(row.axis1_value) << ',' << fmt17(row.axis2_value.value_or(0.0))
               << ',';
            write_breakdown_fields(os, row);
            os << ',' << to_string(row.status) << '\n';
        }
        break;
    }
}

void write_csv(const std::vector<StabilityMapRow>& rows, std::ostream& os) {
    os << "power_W,gq_over_gl,status\n";
    for (const StabilityMapRow& row : rows)
        os << fmt17(row.power) << ',' << fmt17(row.gq_over_gl) << ','
           << to_string(row.status) << '\n';
}

void write_json(const SweepResult& result, std::ostream& os) {
    nlohmann::json doc;
    doc["metadata"] = {
        {"kind", kind_name(result.kind)},
        {"formula", to_string(result.formula)},
        {"axes", result.axis_names},
        {"base", params_json(result.base)},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : result.rows) {
        nlohmann::json r;
        r[result.axis_names[0]] = row.axis1_value;
        if (row.axis2_value && result.axis_names.size() > 1)
            r[result.axis_names[1]] = *row.axis2_value;
        r["status"] = to_string(row.status);
        if (row.breakdown) {
            const NoiseBreakdown& b = *row.breakdown;
            r["omega_rad_s"] = b.omega;
            r["thermal"] = b.thermal;
            r["backaction"] = b.backaction;
            r["shot"] = b.shot;
            r["total"] = b.total;
            r["formula"] = to_string(b.formula);
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

} // namespace omforce
