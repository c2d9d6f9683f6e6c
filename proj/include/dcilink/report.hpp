#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcilink/budget.hpp"
#include "dcilink/dispersion.hpp"
#include "dcilink/gridplan.hpp"
#include "dcilink/scenario.hpp"

namespace dcilink {

// Everything cmd_plan prints. Every numeric field is the unmodified result
// of one core-module call; this layer only composes.
struct PlanReport {
    std::string scenario_path;
    std::string profile_id;
    BandId planning_band = BandId::C;
    OsnrBudgetReport budget;
    AccumulatedCd accumulated;
    double cd_tolerance_ps_nm = 0.0;
    CompensationPlan compensation;
    ReachLimits reach;
    CapacityReport capacity;
    int channel_count = 0;
    PowerCheck power;
    bool feasible = false;
};

// Band the profile is planned in: C when allowed, then L, then O.
BandId planning_band(const TransceiverProfile& profile);

// Link parameters fed to reach computations: scenario lumped losses count
// as extra loss on top of the fiber.
LinkParams link_params(const Scenario& scenario);

PlanReport build_plan_report(const Scenario& scenario, const std::string& profile_id,
                             const std::string& scenario_path = "");

struct CompareRow {
    std::string profile_id;
    Detection detection = Detection::ImDd;
    bool feasible = false;
    std::optional<double> effective_reach_km;
    LimitingFactor limiting_factor = LimitingFactor::Osnr;
    double spectral_efficiency_bps_hz = 0.0;
    double capacity_c_tbps = 0.0;
    double capacity_cl_tbps = 0.0;
};

// One row per catalog profile, sorted by C+L capacity descending (ties by
// id). Capacity columns cover the profile's allowed bands intersected with
// {C} and {C, L}.
std::vector<CompareRow> build_compare_rows(const Scenario& scenario);

}  // namespace dcilink
