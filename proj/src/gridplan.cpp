#include "dcilink/gridplan.hpp"

#include <cmath>
#include <string>

#include "dcilink/errors.hpp"

namespace dcilink {

namespace {

// Relative slack applied when dividing band width by slot width, so that a
// band that is an exact multiple of the slot in real arithmetic does not
// lose a channel to floating-point rounding.
constexpr double kCountEps = 1e-9;

// Band-edge fit check slack in THz; covers rounding of edge arithmetic at
// the ~200 THz scale.
constexpr double kFitEpsThz = 1e-6;

// Adjacent-spacing slack, 1e-9 GHz expressed in THz.
constexpr double kSpacingEpsThz = 1e-9 * 1e-3;

}  // namespace

double spectral_efficiency(double net_rate_gbps, double slot_width_ghz) {
    if (!(slot_width_ghz > 0)) throw validation_error("spectral_efficiency: slot_width > 0");
    return net_rate_gbps / slot_width_ghz;
}

void validate(const ChannelPlan& plan, const BandPlan& band) {
    const double half_slot_thz = plan.slot_width_ghz * 1e-3 / 2.0;
    const auto& centers = plan.center_frequencies_thz;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        if (centers[k] - half_slot_thz < band.f_start_thz - kFitEpsThz ||
            centers[k] + half_slot_thz > band.f_stop_thz + kFitEpsThz)
            throw validation_error("channel plan: channel " + std::to_string(k) +
                                   " outside band " + to_string(band.id));
        if (k > 0 && centers[k] - centers[k - 1] < plan.slot_width_ghz * 1e-3 - kSpacingEpsThz)
            throw validation_error("channel plan: centers " + std::to_string(k - 1) + "/" +
                                   std::to_string(k) + " closer than one slot");
    }
}

ChannelPlan enumerate_channels(const BandPlan& band, double slot_width_ghz,
                               double per_channel_rate_gbps) {
    if (!(slot_width_ghz > 0)) throw validation_error("enumerate_channels: slot_width > 0");
    ChannelPlan plan;
    plan.band = band.id;
    plan.slot_width_ghz = slot_width_ghz;
    plan.per_channel_rate_gbps = per_channel_rate_gbps;

    const double ratio = band.width_ghz() / slot_width_ghz;
    const int count = ratio > 0 ? static_cast<int>(std::floor(ratio + kCountEps)) : 0;
    plan.center_frequencies_thz.reserve(count);
    const double slot_thz = slot_width_ghz * 1e-3;
    for (int k = 0; k < count; ++k)
        plan.center_frequencies_thz.push_back(band.f_start_thz + (k + 0.5) * slot_thz);
    validate(plan, band);
    return plan;
}

CapacityReport fiber_capacity(std::span<const BandPlan> bands, const TransceiverProfile& profile,
                              double loss_coeff_db_km) {
    if (!(profile.slot_width_ghz > 0))
        throw validation_error("fiber_capacity: slot_width > 0");
    CapacityReport report;
    report.spectral_efficiency_bps_hz =
        spectral_efficiency(profile.per_lane_rate_gbps(), profile.slot_width_ghz);
    for (const auto& band : bands) {
        if (!profile.allows_band(band.id))
            throw validation_error("fiber_capacity: band " + to_string(band.id) +
                                   " not allowed for transceiver '" + profile.id + "'");
        const auto plan =
            enumerate_channels(band, profile.slot_width_ghz, profile.per_lane_rate_gbps());
        BandCapacity bc;
        bc.band = band.id;
        bc.channel_count = plan.channel_count();
        bc.capacity_tbps = plan.channel_count() * profile.per_lane_rate_gbps() * 1e-3;
        bc.splitter_loss_db = band.splitter_loss_db;
        bc.reach_penalty_km =
            band_extension_reach_penalty(band.splitter_loss_db, loss_coeff_db_km).penalty_km;
        report.per_band.push_back(bc);
        report.total_tbps += bc.capacity_tbps;
    }
    return report;
}

ReachPenalty band_extension_reach_penalty(double splitter_loss_db, double loss_coeff_db_km) {
    if (!(loss_coeff_db_km > 0))
        throw validation_error("band_extension_reach_penalty: loss_coeff > 0");
    if (!(splitter_loss_db >= 0))
        throw validation_error("band_extension_reach_penalty: splitter_loss >= 0");
    ReachPenalty penalty;
    penalty.penalty_km = splitter_loss_db / loss_coeff_db_km;
    penalty.naive_osnr_factor = std::pow(10.0, splitter_loss_db / 10.0);
    return penalty;
}

}  // namespace dcilink
