#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "omforce/errors.hpp"
#include "omforce/noise_spectrum.hpp"
#include "omforce/params.hpp"
#include "omforce/stability.hpp"

namespace omforce {

enum class SweepKind { Frequency, Power, Map2D };
enum class AxisScale { Linear, Log };

struct Axis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int n_points = 0;
    AxisScale scale = AxisScale::Linear;
};

/// Grid nodes of an axis (n_points values, min..max inclusive).
std::vector<double> axis_grid(const Axis& axis);

struct SweepSpec {
    SweepKind kind = SweepKind::Frequency;
    Axis axis1;
    std::optional<Axis> axis2; ///< Map2D only
    EvalFrequency eval_frequency = EvalFrequency::fixed(0.0);
    SystemParams base;
    SpectrumFormula formula = SpectrumFormula::Resonant;
};

/// One grid point: either a noise breakdown (status Stable) or an explicit
/// status explaining why no spectrum exists there.
struct SweepRow {
    double axis1_value = 0.0;
    std::optional<double> axis2_value;
    std::optional<NoiseBreakdown> breakdown;
    StabilityStatus status = StabilityStatus::Stable;
};

struct SweepResult {
    SweepKind kind = SweepKind::Frequency;
    std::vector<std::string> axis_names;
    std::vector<SweepRow> rows;
    SystemParams base;
    SpectrumFormula formula = SpectrumFormula::Resonant;
    long long created_at_unix_s = 0; ///< in-memory metadata; never serialized
};

/// Rejected frequency sweep: the common operating point is not stable.
class UnstableBasePoint : public Error {
public:
    UnstableBasePoint(const std::string& what, StabilityReport report)
        : Error(what), report_(report) {}
    const StabilityReport& report() const { return report_; }

private:
    StabilityReport report_;
};

/// Spectrum versus analysis frequency at the fixed base operating point.
/// Throws UnstableBasePoint (with the report attached) if that point is not
/// strictly stable.
SweepResult run_frequency_sweep(const SweepSpec& spec);

/// Noise decomposition versus drive power. Unstable/unphysical powers are
/// recorded as status rows, never skipped.
SweepResult run_power_sweep(const SweepSpec& spec);

/// 2-D map over (power, g_q/g_l), evaluated at the per-point analysis
/// frequency (typically the soft-mode resonance).
SweepResult run_map(const SweepSpec& spec);

/// Stability-only grid over (power, g_q/g_l).
struct StabilityMapRow {
    double power = 0.0;
    double gq_over_gl = 0.0;
    StabilityStatus status = StabilityStatus::Unresolved;
};
std::vector<StabilityMapRow> run_stability_map(const SystemParams& base,
                                               const Axis& power_axis,
                                               const Axis& ratio_axis);

/// CSV with a header row and one record per grid point; floating point at
/// 17 significant digits. Non-stable rows leave the numeric fields empty.
void write_csv(const SweepResult& result, std::ostream& os);
void write_csv(const std::vector<StabilityMapRow>& rows, std::ostream& os);

/// JSON document: metadata (base parameters, formula, axes) plus rows.
void write_json(const SweepResult& result, std::ostream& os);

} // namespace omforce
