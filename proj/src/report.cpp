#include "dcilink/report.hpp"

#include <algorithm>

#include "dcilink/errors.hpp"

namespace dcilink {

namespace {

LinkTopology link_for_band(const Scenario& scenario, BandId band) {
    LinkTopology link = scenario.link;
    if (band != BandId::C) {
        const FiberSpec& fiber = fiber_for_band(scenario, band);
        for (auto& span : link.spans) span.fiber = fiber;
    }
    return link;
}

std::vector<BandPlan> allowed_bands(const Scenario& scenario, const TransceiverProfile& profile,
                                    std::initializer_list<BandId> subset = {}) {
    std::vector<BandPlan> bands;
    for (const auto& band : scenario.catalog.bands) {
        if (!profile.allows_band(band.id)) continue;
        if (subset.size() > 0 &&
            std::find(subset.begin(), subset.end(), band.id) == subset.end())
            continue;
        bands.push_back(band);
    }
    return bands;
}

}  // namespace

BandId planning_band(const TransceiverProfile& profile) {
    for (BandId band : {BandId::C, BandId::L, BandId::O})
        if (profile.allows_band(band)) return band;
    return BandId::C;
}

LinkParams link_params(const Scenario& scenario) {
    return LinkParams{scenario.link.launch_power_dbm, scenario.link.preamp.noise_figure_db,
                      scenario.link.design_margin_db, scenario.link.total_lumped_loss_db()};
}

PlanReport build_plan_report(const Scenario& scenario, const std::string& profile_id,
                             const std::string& scenario_path) {
    const TransceiverProfile* profile = scenario.catalog.find_profile(profile_id);
    if (profile == nullptr) {
        std::string ids;
        for (const auto& p : scenario.catalog.profiles)
            ids += (ids.empty() ? "" : ", ") + p.id;
        throw validation_error("unknown profile '" + profile_id + "' (available: " + ids + ")");
    }

    PlanReport report;
    report.scenario_path = scenario_path;
    report.profile_id = profile->id;
    report.planning_band = planning_band(*profile);

    const LinkTopology band_link = link_for_band(scenario, report.planning_band);
    report.budget = make_budget_report(band_link, *profile);
    report.accumulated = accumulated_cd(band_link);
    report.cd_tolerance_ps_nm = profile->cd_tolerance_ps_nm;
    report.compensation = plan_compensation(report.accumulated, scenario.dcm,
                                            profile->cd_tolerance_ps_nm);
    report.reach = effective_reach(*profile, fiber_for_band(scenario, report.planning_band),
                                   link_params(scenario), &scenario.dcm);
    report.capacity = fiber_capacity(allowed_bands(scenario, *profile), *profile,
                                     scenario.fiber.loss_coeff_db_km);
    for (const auto& band : report.capacity.per_band) report.channel_count += band.channel_count;
    report.power = check_amplifier_power(scenario.link.launch_power_dbm,
                                         std::max(report.channel_count, 1),
                                         scenario.link.preamp);
    report.feasible = report.budget.feasible && report.compensation.feasible && report.power.ok;
    return report;
}

std::vector<CompareRow> build_compare_rows(const Scenario& scenario) {
    std::vector<CompareRow> rows;
    rows.reserve(scenario.catalog.profiles.size());
    for (const auto& profile : scenario.catalog.profiles) {
        CompareRow row;
        row.profile_id = profile.id;
        row.detection = profile.detection;

        const PlanReport plan = build_plan_report(scenario, profile.id);
        row.feasible = plan.feasible;
        row.effective_reach_km = plan.reach.reach_km;
        row.limiting_factor = plan.reach.limiting_factor;
        row.spectral_efficiency_bps_hz = plan.capacity.spectral_efficiency_bps_hz;

        row.capacity_c_tbps =
            fiber_capacity(allowed_bands(scenario, profile, {BandId::C}), profile,
                           scenario.fiber.loss_coeff_db_km)
                .total_tbps;
        row.capacity_cl_tbps =
            fiber_capacity(allowed_bands(scenario, profile, {BandId::C, BandId::L}), profile,
                           scenario.fiber.loss_coeff_db_km)
                .total_tbps;
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
        if (a.capacity_cl_tbps != b.capacity_cl_tbps)
            return a.capacity_cl_tbps > b.capacity_cl_tbps;
        return a.profile_id < b.profile_id;
    });
    return rows;
}

}  // namespace dcilink
