#pragma once

#include <optional>
#include <string>

#include "dcilink/budget.hpp"
#include "dcilink/catalog.hpp"

namespace dcilink {

// Signed accumulated chromatic dispersion over a link, in ps/nm.
struct AccumulatedCd {
    double ps_per_nm = 0.0;

    bool operator==(const AccumulatedCd&) const = default;
};

// Sum of length * D over all spans, using each span's own fiber.
AccumulatedCd accumulated_cd(const LinkTopology& link);

// Same sum with one FiberSpec substituted for every span, for evaluating a
// link in a band other than the one its spans were specified in.
AccumulatedCd accumulated_cd(const LinkTopology& link, const FiberSpec& band_fiber);

// tolerance / |D|; +infinity on zero-dispersion fiber. Throws on negative
// tolerance.
double cd_limited_reach_km(double cd_tolerance_ps_nm, double cd_coeff_ps_nm_km);

struct CompensationPlan {
    double fixed_module_ps_nm = 0.0;
    double tunable_setting_ps_nm = 0.0;
    double residual_cd_ps_nm = 0.0;
    bool feasible = false;
    double headroom_ps_nm = 0.0;  // tolerance - |residual|
};

// Pick the fixed module minimizing |acc + fixed| (ties go to the smaller
// |fixed|), then absorb the remainder with the tunable stage, clamped to its
// range and quantized to its granularity toward zero residual. Infeasibility
// is a result, not an error.
CompensationPlan plan_compensation(AccumulatedCd acc, const DcmInventory& inventory,
                                   double cd_tolerance_ps_nm);

// Largest accumulated CD magnitude the inventory can bring within tolerance,
// per sign of the accumulation.
struct CompensableRange {
    double max_positive_ps_nm = 0.0;
    double max_negative_ps_nm = 0.0;  // magnitude
};

CompensableRange max_compensable_cd(const DcmInventory& inventory, double cd_tolerance_ps_nm);

enum class LimitingFactor { Osnr, Cd };

std::string to_string(LimitingFactor f);

struct ReachLimits {
    std::optional<double> reach_km;  // nullopt: infeasible at any length
    LimitingFactor limiting_factor = LimitingFactor::Osnr;
    std::optional<double> osnr_bound_km;
    double cd_bound_km = 0.0;  // +infinity when unconstrained
};

// min(OSNR-limited reach, CD-limited reach). Without an inventory the CD
// bound is the profile's raw tolerance; with one, it is the longest link the
// planner can still compensate to within tolerance.
ReachLimits effective_reach(const TransceiverProfile& profile, const FiberSpec& fiber,
                            const LinkParams& params, const DcmInventory* inventory = nullptr,
                            const PhysicalConstants& constants = {});

}  // namespace dcilink
