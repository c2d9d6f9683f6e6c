#include "dcilink/budget.hpp"

#include <cmath>

#include "dcilink/errors.hpp"

namespace dcilink {

void validate(const PhysicalConstants& c) {
    if (!(c.planck_j_s > 0)) throw validation_error("constants: h > 0");
    if (!(c.center_frequency_thz > 0)) throw validation_error("constants: center_frequency > 0");
    if (!(c.ref_bandwidth_ghz > 0)) throw validation_error("constants: ref_bandwidth > 0");
}

double ase_floor_dbm(const PhysicalConstants& constants) {
    const double nu_hz = constants.center_frequency_thz * 1e12;
    const double bref_hz = constants.ref_bandwidth_ghz * 1e9;
    const double watts = constants.planck_j_s * nu_hz * bref_hz;
    return 10.0 * std::log10(watts / 1e-3);
}

double span_osnr_db(double launch_dbm, double total_loss_db, double nf_db, double margin_db,
                    const PhysicalConstants& constants) {
    return launch_dbm - total_loss_db - nf_db - margin_db - ase_floor_dbm(constants);
}

double cascade_osnr_db(std::span<const double> stage_osnr_db) {
    if (stage_osnr_db.empty()) throw validation_error("cascade_osnr: no stages");
    double inv_sum = 0.0;
    for (double x : stage_osnr_db) inv_sum += std::pow(10.0, -x / 10.0);
    return -10.0 * std::log10(inv_sum);
}

std::optional<double> osnr_limited_reach_km(const TransceiverProfile& profile,
                                            const FiberSpec& fiber, const LinkParams& params,
                                            const PhysicalConstants& constants) {
    if (!(fiber.loss_coeff_db_km > 0))
        throw validation_error("osnr_limited_reach: loss_coeff > 0");
    const double zero_length_osnr =
        span_osnr_db(params.launch_dbm, params.extra_loss_db, params.nf_db, params.margin_db,
                     constants);
    const double headroom_db = zero_length_osnr - profile.required_osnr_db;
    if (headroom_db < 0) return std::nullopt;
    return headroom_db / fiber.loss_coeff_db_km;
}

PowerCheck check_amplifier_power(double launch_dbm, int channel_count,
                                 const AmplifierSpec& amp) {
    if (channel_count < 1) throw validation_error("check_amplifier_power: channel_count >= 1");
    PowerCheck result;
    result.total_output_dbm = launch_dbm + 10.0 * std::log10(double(channel_count));
    result.limit_dbm = amp.max_total_output_dbm;
    result.ok = result.total_output_dbm <= amp.max_total_output_dbm;
    return result;
}

OsnrBudgetReport make_budget_report(const LinkTopology& link, const TransceiverProfile& profile,
                                    const PhysicalConstants& constants) {
    OsnrBudgetReport report;
    report.components.ase_floor_dbm = ase_floor_dbm(constants);
    report.components.launch_dbm = link.launch_power_dbm;
    report.components.total_loss_db = link.total_loss_db();
    report.components.noise_figure_db = link.preamp.noise_figure_db;
    report.components.margin_db = link.design_margin_db;
    report.achievable_osnr_db = report.components.launch_dbm - report.components.total_loss_db -
                                report.components.noise_figure_db - report.components.margin_db -
                                report.components.ase_floor_dbm;
    report.required_osnr_db = profile.required_osnr_db;
    report.residual_margin_db = report.achievable_osnr_db - report.required_osnr_db;
    report.feasible = report.residual_margin_db >= 0;
    return report;
}

}  // namespace dcilink
