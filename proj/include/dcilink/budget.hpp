#pragma once

#include <optional>
#include <span>

#include "dcilink/catalog.hpp"

namespace dcilink {

// Conventions behind the OSNR arithmetic: single-polarization ASE in a
// 12.5 GHz (0.1 nm at 1550 nm) reference bandwidth, all noise attributed to
// one preamplifier stage.
struct PhysicalConstants {
    double planck_j_s = 6.62607015e-34;
    double center_frequency_thz = 193.4;
    double ref_bandwidth_ghz = 12.5;

    bool operator==(const PhysicalConstants&) const = default;
};

void validate(const PhysicalConstants& c);

// h * nu * B_ref expressed in dBm: the quantum noise floor a 0 dB-NF
// amplifier would set in the reference bandwidth. ~ -57.95 dBm at defaults.
double ase_floor_dbm(const PhysicalConstants& constants = {});

// Achievable OSNR of a preamplified single-span link:
//   launch - loss - NF - margin - ase_floor.
// Pure arithmetic; every real input is legal.
double span_osnr_db(double launch_dbm, double total_loss_db, double nf_db, double margin_db,
                    const PhysicalConstants& constants = {});

// Combine per-stage OSNRs: -10 log10(sum 10^(-x/10)). Throws on an empty
// list ("no stages").
double cascade_osnr_db(std::span<const double> stage_osnr_db);

struct LinkParams {
    double launch_dbm = 3.0;
    double nf_db = 6.0;
    double margin_db = 3.0;
    double extra_loss_db = 0.0;

    bool operator==(const LinkParams&) const = default;
};

// Largest span length whose OSNR still meets the profile's requirement;
// nullopt when even a zero-length link falls short.
std::optional<double> osnr_limited_reach_km(const TransceiverProfile& profile,
                                            const FiberSpec& fiber, const LinkParams& params,
                                            const PhysicalConstants& constants = {});

struct PowerCheck {
    double total_output_dbm = 0.0;
    double limit_dbm = 0.0;
    bool ok = true;
};

// Total amplifier output for channel_count channels at the given per-channel
// launch power, against the amplifier's output ceiling.
PowerCheck check_amplifier_power(double launch_dbm, int channel_count, const AmplifierSpec& amp);

struct OsnrBudgetReport {
    struct Components {
        double ase_floor_dbm = 0.0;
        double launch_dbm = 0.0;
        double total_loss_db = 0.0;
        double noise_figure_db = 0.0;
        double margin_db = 0.0;
    };

    Components components;
    double achievable_osnr_db = 0.0;
    double required_osnr_db = 0.0;
    double residual_margin_db = 0.0;
    bool feasible = false;
};

OsnrBudgetReport make_budget_report(const LinkTopology& link, const TransceiverProfile& profile,
                                    const PhysicalConstants& constants = {});

}  // namespace dcilink
