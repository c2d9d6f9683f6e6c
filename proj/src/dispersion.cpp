#include "dcilink/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcilink/errors.hpp"

namespace dcilink {

namespace {

// Largest granularity-aligned setting not exceeding the range, used as the
// symmetric clamp bound for the tunable stage.
double quantized_range(const DcmInventory& inv) {
    return inv.tunable_granularity_ps_nm *
           std::floor(inv.tunable_range_ps_nm / inv.tunable_granularity_ps_nm);
}

}  // namespace

AccumulatedCd accumulated_cd(const LinkTopology& link) {
    double sum = 0.0;
    for (const auto& s : link.spans) sum += s.length_km * s.fiber.cd_coeff_ps_nm_km;
    return AccumulatedCd{sum};
}

AccumulatedCd accumulated_cd(const LinkTopology& link, const FiberSpec& band_fiber) {
    double sum = 0.0;
    for (const auto& s : link.spans) sum += s.length_km * band_fiber.cd_coeff_ps_nm_km;
    return AccumulatedCd{sum};
}

double cd_limited_reach_km(double cd_tolerance_ps_nm, double cd_coeff_ps_nm_km) {
    if (cd_tolerance_ps_nm < 0) throw validation_error("cd_limited_reach: cd_tolerance >= 0");
    if (cd_coeff_ps_nm_km == 0.0) return std::numeric_limits<double>::infinity();
    return cd_tolerance_ps_nm / std::abs(cd_coeff_ps_nm_km);
}

CompensationPlan plan_compensation(AccumulatedCd acc, const DcmInventory& inventory,
                                   double cd_tolerance_ps_nm) {
    validate(inventory);
    if (cd_tolerance_ps_nm < 0) throw validation_error("plan_compensation: cd_tolerance >= 0");

    // Fixed module selection: minimize the post-module magnitude, ties
    // toward the smaller module, then deterministically toward the larger
    // signed value.
    double best_fixed = 0.0;
    bool have = false;
    for (double f : inventory.fixed_values_ps_nm) {
        if (!have) {
            best_fixed = f;
            have = true;
            continue;
        }
        const double after_f = std::abs(acc.ps_per_nm + f);
        const double after_best = std::abs(acc.ps_per_nm + best_fixed);
        if (after_f < after_best ||
            (after_f == after_best && std::abs(f) < std::abs(best_fixed)) ||
            (after_f == after_best && std::abs(f) == std::abs(best_fixed) && f > best_fixed)) {
            best_fixed = f;
        }
    }

    const double remainder = acc.ps_per_nm + best_fixed;
    const double bound = quantized_range(inventory);
    const double g = inventory.tunable_granularity_ps_nm;
    const double ideal = std::clamp(-remainder, -bound, bound);

    // Quantize toward the smaller |residual|; ties toward the smaller
    // |setting|.
    const double lo = std::clamp(g * std::floor(ideal / g), -bound, bound);
    const double hi = std::clamp(g * std::ceil(ideal / g), -bound, bound);
    const double res_lo = std::abs(remainder + lo);
    const double res_hi = std::abs(remainder + hi);
    double tunable = lo;
    if (res_hi < res_lo || (res_hi == res_lo && std::abs(hi) < std::abs(lo))) tunable = hi;

    CompensationPlan plan;
    plan.fixed_module_ps_nm = best_fixed;
    plan.tunable_setting_ps_nm = tunable;
    plan.residual_cd_ps_nm = acc.ps_per_nm + best_fixed + tunable;
    plan.feasible = std::abs(plan.residual_cd_ps_nm) <= cd_tolerance_ps_nm;
    plan.headroom_ps_nm = cd_tolerance_ps_nm - std::abs(plan.residual_cd_ps_nm);
    return plan;
}

CompensableRange max_compensable_cd(const DcmInventory& inventory, double cd_tolerance_ps_nm) {
    validate(inventory);
    const auto [min_it, max_it] = std::minmax_element(inventory.fixed_values_ps_nm.begin(),
                                                      inventory.fixed_values_ps_nm.end());
    const double bound = quantized_range(inventory);
    CompensableRange range;
    range.max_positive_ps_nm = -*min_it + bound + cd_tolerance_ps_nm;
    range.max_negative_ps_nm = *max_it + bound + cd_tolerance_ps_nm;
    return range;
}

std::string to_string(LimitingFactor f) {
    return f == LimitingFactor::Cd ? "CD" : "OSNR";
}

ReachLimits effective_reach(const TransceiverProfile& profile, const FiberSpec& fiber,
                            const LinkParams& params, const DcmInventory* inventory,
                            const PhysicalConstants& constants) {
    ReachLimits result;
    result.osnr_bound_km = osnr_limited_reach_km(profile, fiber, params, constants);

    const double d = fiber.cd_coeff_ps_nm_km;
    if (d == 0.0) {
        result.cd_bound_km = std::numeric_limits<double>::infinity();
    } else if (inventory != nullptr) {
        const auto range = max_compensable_cd(*inventory, profile.cd_tolerance_ps_nm);
        const double max_acc = d > 0 ? range.max_positive_ps_nm : range.max_negative_ps_nm;
        result.cd_bound_km = max_acc / std::abs(d);
    } else {
        result.cd_bound_km = cd_limited_reach_km(profile.cd_tolerance_ps_nm, d);
    }

    if (!result.osnr_bound_km.has_value()) {
        result.reach_km = std::nullopt;
        result.limiting_factor = LimitingFactor::Osnr;
        return result;
    }
    if (result.cd_bound_km < *result.osnr_bound_km) {
        result.reach_km = result.cd_bound_km;
        result.limiting_factor = LimitingFactor::Cd;
    } else {
        result.reach_km = *result.osnr_bound_km;
        result.limiting_factor = LimitingFactor::Osnr;
    }
    return result;
}

}  // namespace dcilink
