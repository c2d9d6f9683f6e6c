#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dcilink {

enum class Detection { ImDd, Coherent };
enum class BandId { O, C, L };

std::string to_string(Detection d);
std::string to_string(BandId b);
Detection detection_from_string(const std::string& s);
BandId band_from_string(const std::string& s);

// One modulation-format option. Rates in Gb/s, baud in GBd, slot width in
// GHz, OSNR in dB referenced to 12.5 GHz noise bandwidth, CD tolerance in
// ps/nm. For multi-lane formats net_rate is the client rate and baud/slot
// describe one lane.
struct TransceiverProfile {
    std::string id;
    double net_rate_gbps = 0.0;
    double baud_gbd = 0.0;
    double bits_per_symbol = 0.0;
    Detection detection = Detection::ImDd;
    double slot_width_ghz = 0.0;
    double required_osnr_db = 0.0;
    double cd_tolerance_ps_nm = 0.0;
    int lane_count = 1;
    std::vector<BandId> bands;

    double per_lane_rate_gbps() const { return net_rate_gbps / lane_count; }
    int polarization_factor() const { return detection == Detection::Coherent ? 2 : 1; }
    bool allows_band(BandId b) const;

    bool operator==(const TransceiverProfile&) const = default;
};

// Single-coefficient fiber model: one loss slope and one dispersion
// coefficient, both taken at the band center.
struct FiberSpec {
    double loss_coeff_db_km = 0.25;
    double cd_coeff_ps_nm_km = 17.0;

    bool operator==(const FiberSpec&) const = default;
};

struct AmplifierSpec {
    double noise_figure_db = 6.0;
    double max_total_output_dbm = 23.0;

    bool operator==(const AmplifierSpec&) const = default;
};

// Transmission band with edges in THz. splitter_loss is the extra lumped
// loss incurred when this band is added next to others (0 for single-band
// operation).
struct BandPlan {
    BandId id = BandId::C;
    double f_start_thz = 0.0;
    double f_stop_thz = 0.0;
    double splitter_loss_db = 0.0;

    double width_ghz() const { return (f_stop_thz - f_start_thz) * 1e3; }

    bool operator==(const BandPlan&) const = default;
};

struct Span {
    double length_km = 0.0;
    FiberSpec fiber;

    bool operator==(const Span&) const = default;
};

struct LumpedLoss {
    std::string label;
    double loss_db = 0.0;

    bool operator==(const LumpedLoss&) const = default;
};

// Ordered single-direction link: fiber spans, lumped-loss elements, and one
// preamplifier in front of the receiver.
struct LinkTopology {
    std::vector<Span> spans;
    std::vector<LumpedLoss> lumped_losses;
    AmplifierSpec preamp;
    double launch_power_dbm = 3.0;
    double design_margin_db = 3.0;

    double total_span_loss_db() const;
    double total_lumped_loss_db() const;
    double total_loss_db() const { return total_span_loss_db() + total_lumped_loss_db(); }
    double total_length_km() const;

    bool operator==(const LinkTopology&) const = default;
};

// Available dispersion compensation hardware: a shelf of fixed modules plus
// one tunable stage. Values in ps/nm; compensating C-band fiber means
// negative values. fixed_values always contains 0 (the no-module option).
struct DcmInventory {
    std::vector<double> fixed_values_ps_nm{0.0};
    double tunable_range_ps_nm = 0.0;
    double tunable_granularity_ps_nm = 1.0;

    bool operator==(const DcmInventory&) const = default;
};

// Profile and band tables, keyed by id. Merge keeps insertion order and
// lets the incoming entry win on id collision.
struct Catalog {
    std::vector<TransceiverProfile> profiles;
    std::vector<BandPlan> bands;

    const TransceiverProfile* find_profile(const std::string& id) const;
    const BandPlan* find_band(BandId id) const;
    void merge_profile(const TransceiverProfile& p);
    void merge_band(const BandPlan& b);

    bool operator==(const Catalog&) const = default;
};

// Built-in tables. Values the literature pins (rates, bauds, required
// OSNRs, the 50 ps/nm PAM-4 CD limit) are exact; the rest are documented
// engineering defaults, overridable per scenario.
Catalog builtin_catalog();
std::vector<BandPlan> builtin_bands();
FiberSpec default_fiber();
std::map<BandId, FiberSpec> default_fiber_by_band(const FiberSpec& base);
DcmInventory default_dcm_inventory();

// Coherent formats carry this CD tolerance sentinel: receiver-side
// equalization makes accumulated dispersion a non-issue at DCI scale.
inline constexpr double kCoherentCdToleranceSentinel = 100000.0;

// Invariant checks; throw validation_error naming the failed invariant.
void validate(const TransceiverProfile& p);
void validate(const FiberSpec& f, const std::string& where = "fiber");
void validate(const AmplifierSpec& a);
void validate(const BandPlan& b);
void validate(const LinkTopology& link);
void validate(const DcmInventory& inv);

}  // namespace dcilink
