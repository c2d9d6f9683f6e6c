#pragma once

#include <span>
#include <vector>

#include "dcilink/catalog.hpp"

namespace dcilink {

// Net rate over occupied slot, b/s/Hz. Throws on non-positive slot width.
double spectral_efficiency(double net_rate_gbps, double slot_width_ghz);

struct ChannelPlan {
    BandId band = BandId::C;
    double slot_width_ghz = 0.0;
    std::vector<double> center_frequencies_thz;  // ascending
    double per_channel_rate_gbps = 0.0;

    int channel_count() const { return static_cast<int>(center_frequencies_thz.size()); }
};

// Check the plan against its band: every channel inside the band edges,
// adjacent centers at least one slot apart (1e-9 GHz slack for rounding).
void validate(const ChannelPlan& plan, const BandPlan& band);

// Pack floor(band_width / slot) channels from the band start, centers at
// f_start + (k + 0.5) * slot.
ChannelPlan enumerate_channels(const BandPlan& band, double slot_width_ghz,
                               double per_channel_rate_gbps = 0.0);

struct BandCapacity {
    BandId band = BandId::C;
    int channel_count = 0;
    double capacity_tbps = 0.0;
    double splitter_loss_db = 0.0;
    double reach_penalty_km = 0.0;
};

struct CapacityReport {
    std::vector<BandCapacity> per_band;
    double total_tbps = 0.0;
    double spectral_efficiency_bps_hz = 0.0;
};

// Fully populated DWDM capacity over the given bands. Every band must be
// allowed for the profile. loss_coeff feeds the per-band reach penalty.
CapacityReport fiber_capacity(std::span<const BandPlan> bands, const TransceiverProfile& profile,
                              double loss_coeff_db_km = 0.25);

struct ReachPenalty {
    double penalty_km = 0.0;
    // What the splitter loss would look like if misread as an OSNR scale
    // factor; reported alongside the km figure for contrast, never used in
    // reach math.
    double naive_osnr_factor = 1.0;
};

ReachPenalty band_extension_reach_penalty(double splitter_loss_db, double loss_coeff_db_km);

}  // namespace dcilink
