#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "dcilink/budget.hpp"

namespace dcilink {

enum class PulseShaping { NrzGaussian, RaisedCosine };

// Time-domain PAM-4 simulation setup. Bandwidth fields follow one rule:
// 0 selects the conventional default (0.75 x baud), +infinity bypasses the
// filter entirely.
struct WaveformConfig {
    double baud_gbd = 56.0;
    int samples_per_symbol = 16;
    int symbol_count = 4096;
    PulseShaping shaping = PulseShaping::NrzGaussian;
    double tx_bandwidth_ghz = 0.0;  // Gaussian low-pass 3 dB bandwidth (NRZ mode)
    double rc_rolloff = 0.3;        // roll-off beta (raised-cosine mode)
    double rx_bandwidth_ghz = 0.0;  // receiver low-pass 3 dB bandwidth
    int rx_filter_order = 4;
    double center_wavelength_nm = 1550.0;
    std::uint64_t rng_seed = 1;
    // Symbols excluded from metrics at each block edge; the dispersion
    // filter acts on the periodic block, so edges see wrap-around.
    int guard_symbols = 16;

    double sample_rate_ghz() const { return baud_gbd * samples_per_symbol; }
    double resolved_tx_bandwidth_ghz() const {
        return tx_bandwidth_ghz == 0.0 ? 0.75 * baud_gbd : tx_bandwidth_ghz;
    }
    double resolved_rx_bandwidth_ghz() const {
        return rx_bandwidth_ghz == 0.0 ? 0.75 * baud_gbd : rx_bandwidth_ghz;
    }
};

void validate(const WaveformConfig& config);

// Uniformly sampled complex baseband field envelope; power = |a|^2.
struct OpticalField {
    std::vector<std::complex<double>> samples;
    double sample_rate_ghz = 0.0;
    double center_wavelength_nm = 1550.0;

    // Sum |a|^2 / sample_rate.
    double energy() const;
    double mean_power() const;
};

struct Pam4Signal {
    OpticalField field;
    std::vector<std::uint8_t> levels;  // 0..3, Gray-mapped from dibits
};

// Draw Gray-mapped PAM-4 levels from a seeded generator; bit-reproducible
// across platforms.
std::vector<std::uint8_t> random_pam4_levels(int count, std::uint64_t seed);

// Map levels onto the power rails {0, 1/3, 2/3, 1}, apply the configured
// pulse shaping, and take the chirp-free field as sqrt(power).
OpticalField modulate_pam4(const WaveformConfig& config, std::span<const std::uint8_t> levels);

Pam4Signal generate_pam4(const WaveformConfig& config);

// Unitary all-pass dispersion filter: phase pi * lambda^2 * D_acc * f^2 / c
// over baseband offset f. Linear, invertible via the negated argument.
OpticalField apply_cd(const OpticalField& field, double acc_cd_ps_nm);

// Square-law photodiode followed by a zero-phase Butterworth-magnitude
// low-pass. Bandwidth +infinity bypasses the filter.
std::vector<double> detect(const OpticalField& field, double rx_bandwidth_ghz,
                           int filter_order = 4);

inline constexpr double kEyeClosedPenaltyDb = std::numeric_limits<double>::infinity();

struct EyeMetrics {
    std::array<double, 3> eye_openings{};     // per PAM-4 eye, power units
    std::array<double, 3> penalties_db{};     // vs reference, +inf when closed
    double worst_penalty_db = 0.0;
    bool eye_closed = false;
    int sampling_phase = 0;                   // sample offset within the symbol
    std::optional<double> sampled_ber;        // filled when noise is loaded
};

// Data-aided eye analysis at the common sampling phase that maximizes the
// worst eye. Openings are min(upper rail) - max(lower rail) where the rails
// take every level on the far side of the decision threshold. Penalties are
// 10 log10(reference opening / opening) when a reference is given.
EyeMetrics eye_metrics(std::span<const double> electrical,
                       std::span<const std::uint8_t> levels, const WaveformConfig& config,
                       const EyeMetrics* reference = nullptr);

struct CdSweepPoint {
    double acc_cd_ps_nm = 0.0;
    double worst_penalty_db = 0.0;
    bool eye_closed = false;
};

// Eye-closure penalty versus accumulated dispersion, against the zero-CD
// run with the same seed. Points must be ascending and start at 0.
// Deterministic for a given (config, seed), independent of worker count.
std::vector<CdSweepPoint> cd_penalty_sweep(const WaveformConfig& config,
                                           std::span<const double> cd_points_ps_nm);

// Smallest accumulated CD whose worst-eye penalty reaches the criterion,
// found by bisection on the monotone pre-closure region, to 0.5 ps/nm.
// Throws when the criterion is not reached within the search bound.
double find_cd_limit(const WaveformConfig& config, double penalty_criterion_db,
                     double search_max_ps_nm = 500.0, double resolution_ps_nm = 0.5);

// Add circular complex white Gaussian noise sized so that noise power in the
// reference bandwidth yields the requested OSNR against the field's mean
// power. Seeded and deterministic.
OpticalField add_ase(const OpticalField& field, double osnr_db, const PhysicalConstants& constants,
                     std::uint64_t seed);

// Hard-decision bit error ratio with thresholds midway between measured
// level means and Gray decoding.
double ber(std::span<const double> electrical, std::span<const std::uint8_t> levels,
           const WaveformConfig& config);

struct OsnrSweepPoint {
    double osnr_db = 0.0;
    double ber = 0.0;
};

// Monte-Carlo BER over a list of OSNR points; each point's noise stream is
// derived from (config seed, point index).
std::vector<OsnrSweepPoint> osnr_ber_sweep(const WaveformConfig& config,
                                           std::span<const double> osnr_points_db,
                                           const PhysicalConstants& constants = {});

// Per-point stream derivation for sweeps: mixes a master seed with an index.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

// CSV exports: "acc_cd_ps_nm,worst_penalty_db" and "osnr_db,ber".
void write_cd_sweep_csv(std::ostream& out, std::span<const CdSweepPoint> points);
void write_osnr_sweep_csv(std::ostream& out, std::span<const OsnrSweepPoint> points);

}  // namespace dcilink
