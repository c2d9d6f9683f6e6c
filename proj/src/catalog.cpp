#include "dcilink/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "dcilink/errors.hpp"

namespace dcilink {

std::string to_string(Detection d) {
    return d == Detection::Coherent ? "coherent" : "im-dd";
}

std::string to_string(BandId b) {
    switch (b) {
        case BandId::O: return "O";
        case BandId::C: return "C";
        case BandId::L: return "L";
    }
    return "?";
}

Detection detection_from_string(const std::string& s) {
    if (s == "im-dd" || s == "imdd") return Detection::ImDd;
    if (s == "coherent") return Detection::Coherent;
    throw parse_error("unknown detection '" + s + "' (expected \"im-dd\" or \"coherent\")");
}

BandId band_from_string(const std::string& s) {
    if (s == "O") return BandId::O;
    if (s == "C") return BandId::C;
    if (s == "L") return BandId::L;
    throw parse_error("unknown band '" + s + "' (expected \"O\", \"C\" or \"L\")");
}

bool TransceiverProfile::allows_band(BandId b) const {
    return std::find(bands.begin(), bands.end(), b) != bands.end();
}

double LinkTopology::total_span_loss_db() const {
    double sum = 0.0;
    for (const auto& s : spans) sum += s.length_km * s.fiber.loss_coeff_db_km;
    return sum;
}

double LinkTopology::total_lumped_loss_db() const {
    double sum = 0.0;
    for (const auto& l : lumped_losses) sum += l.loss_db;
    return sum;
}

double LinkTopology::total_length_km() const {
    double sum = 0.0;
    for (const auto& s : spans) sum += s.length_km;
    return sum;
}

const TransceiverProfile* Catalog::find_profile(const std::string& id) const {
    for (const auto& p : profiles)
        if (p.id == id) return &p;
    return nullptr;
}

const BandPlan* Catalog::find_band(BandId id) const {
    for (const auto& b : bands)
        if (b.id == id) return &b;
    return nullptr;
}

void Catalog::merge_profile(const TransceiverProfile& p) {
    for (auto& existing : profiles) {
        if (existing.id == p.id) {
            existing = p;
            return;
        }
    }
    profiles.push_back(p);
}

void Catalog::merge_band(const BandPlan& b) {
    for (auto& existing : bands) {
        if (existing.id == b.id) {
            existing = b;
            return;
        }
    }
    bands.push_back(b);
}

std::vector<BandPlan> builtin_bands() {
    // C and L are deliberately equal width so that adding the L band doubles
    // channel count exactly. The O entries hold an 8-lane 800 GHz grid whose
    // top lane sits at 235.4 THz. The L-band splitter loss models the C/L
    // band-combining element.
    return {
        BandPlan{BandId::O, 229.4, 235.8, 0.0},
        BandPlan{BandId::C, 191.3, 196.1, 0.0},
        BandPlan{BandId::L, 186.0, 190.8, 1.5},
    };
}

FiberSpec default_fiber() { return FiberSpec{0.25, 17.0}; }

std::map<BandId, FiberSpec> default_fiber_by_band(const FiberSpec& base) {
    // C and L share the supplied coefficients. O-band standard fiber sits
    // near the zero-dispersion wavelength and runs a higher loss slope.
    return {
        {BandId::O, FiberSpec{0.35, -2.0}},
        {BandId::C, base},
        {BandId::L, base},
    };
}

DcmInventory default_dcm_inventory() {
    // Fixed modules in 20 km steps of standard C-band fiber (17 ps/nm/km),
    // plus a +/-200 ps/nm tunable stage at 1 ps/nm granularity.
    return DcmInventory{
        {0.0, -340.0, -680.0, -1020.0, -1360.0, -1700.0, -2040.0},
        200.0,
        1.0,
    };
}

Catalog builtin_catalog() {
    Catalog cat;
    cat.bands = builtin_bands();

    const std::vector<BandId> cl{BandId::C, BandId::L};

    // 112G PAM-4 on one wavelength. 50 ps/nm CD tolerance without
    // compensation; required OSNR at the optimistic end of published
    // receivers. 100 GHz slot keeps SE near 1 b/s/Hz.
    cat.profiles.push_back(TransceiverProfile{
        "PAM4-112", 112.0, 56.0, 2.0, Detection::ImDd, 100.0, 28.0, 50.0, 1, cl});

    // Single-sideband PAM-4: 100G in a 75 GHz slot. The narrower slot and
    // the CD tolerance (80 km of standard fiber plus headroom) come from
    // receiver-side processing; both enter here as plain catalog data.
    cat.profiles.push_back(TransceiverProfile{
        "SSB-PAM4-100", 100.0, 56.0, 2.0, Detection::ImDd, 75.0, 28.0, 1400.0, 1, cl});

    cat.profiles.push_back(TransceiverProfile{
        "DP-QPSK-100", 100.0, 28.0, 2.0, Detection::Coherent, 50.0, 11.0,
        kCoherentCdToleranceSentinel, 1, cl});

    cat.profiles.push_back(TransceiverProfile{
        "16QAM-200", 200.0, 28.0, 4.0, Detection::Coherent, 50.0, 19.0,
        kCoherentCdToleranceSentinel, 1, cl});

    // Required OSNR: 200G figure plus 3 dB for the doubled symbol rate.
    cat.profiles.push_back(TransceiverProfile{
        "16QAM-400", 400.0, 56.0, 4.0, Detection::Coherent, 75.0, 22.0,
        kCoherentCdToleranceSentinel, 1, cl});

    cat.profiles.push_back(TransceiverProfile{
        "64QAM-1000", 1000.0, 100.0, 6.0, Detection::Coherent, 125.0, 31.0,
        kCoherentCdToleranceSentinel, 1, cl});

    // 400G client split over 8 O-band lanes, 50G PAM-4 each, 800 GHz apart.
    cat.profiles.push_back(TransceiverProfile{
        "O-PAM4-400", 400.0, 25.0, 2.0, Detection::ImDd, 800.0, 24.5, 250.0, 8,
        {BandId::O}});

    return cat;
}

void validate(const TransceiverProfile& p) {
    const std::string where = "transceiver '" + p.id + "': ";
    if (p.id.empty()) throw validation_error("transceiver: id must be non-empty");
    if (!(p.net_rate_gbps > 0)) throw validation_error(where + "net_rate > 0");
    if (!(p.baud_gbd > 0)) throw validation_error(where + "baud > 0");
    if (!(p.bits_per_symbol > 0)) throw validation_error(where + "bits_per_symbol > 0");
    if (!(p.slot_width_ghz > 0)) throw validation_error(where + "slot_width > 0");
    if (!(p.cd_tolerance_ps_nm >= 0)) throw validation_error(where + "cd_tolerance >= 0");
    if (p.lane_count < 1) throw validation_error(where + "lane_count >= 1");
    if (p.bands.empty()) throw validation_error(where + "bands must be non-empty");
    const double capacity_bound =
        p.lane_count * p.baud_gbd * p.bits_per_symbol * p.polarization_factor();
    if (p.net_rate_gbps > capacity_bound + 1e-9)
        throw validation_error(where +
                               "net_rate <= baud * bits_per_symbol * polarization_factor");
}

void validate(const FiberSpec& f, const std::string& where) {
    if (!(f.loss_coeff_db_km > 0)) throw validation_error(where + ": loss_coeff > 0");
    if (!std::isfinite(f.cd_coeff_ps_nm_km)) throw validation_error(where + ": cd_coeff finite");
}

void validate(const AmplifierSpec& a) {
    if (!(a.noise_figure_db >= 3.0))
        throw validation_error("amplifier: noise_figure >= 3.0 (quantum limit)");
    if (!std::isfinite(a.max_total_output_dbm))
        throw validation_error("amplifier: max_total_output finite");
}

void validate(const BandPlan& b) {
    const std::string where = "band " + to_string(b.id) + ": ";
    if (!(b.f_stop_thz > b.f_start_thz)) throw validation_error(where + "f_stop > f_start");
    if (!(b.splitter_loss_db >= 0)) throw validation_error(where + "splitter_loss >= 0");
}

void validate(const LinkTopology& link) {
    for (std::size_t i = 0; i < link.spans.size(); ++i) {
        if (!(link.spans[i].length_km >= 0))
            throw validation_error("spans[" + std::to_string(i) + "]: length >= 0");
        validate(link.spans[i].fiber, "spans[" + std::to_string(i) + "].fiber");
    }
    for (std::size_t i = 0; i < link.lumped_losses.size(); ++i) {
        if (!(link.lumped_losses[i].loss_db >= 0))
            throw validation_error("lumped_losses[" + std::to_string(i) + "]: loss >= 0");
    }
    validate(link.preamp);
    if (!std::isfinite(link.launch_power_dbm))
        throw validation_error("launch_power_dbm finite");
    if (!(link.design_margin_db >= 0)) throw validation_error("margin_db >= 0");
}

void validate(const DcmInventory& inv) {
    if (std::find(inv.fixed_values_ps_nm.begin(), inv.fixed_values_ps_nm.end(), 0.0) ==
        inv.fixed_values_ps_nm.end())
        throw validation_error("dcm_inventory: fixed_values must contain 0");
    if (!(inv.tunable_range_ps_nm >= 0))
        throw validation_error("dcm_inventory: tunable_range >= 0");
    if (!(inv.tunable_granularity_ps_nm > 0))
        throw validation_error("dcm_inventory: tunable_granularity > 0");
}

}  // namespace dcilink
