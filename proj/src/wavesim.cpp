#include "dcilink/wavesim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <thread>

#include "dcilink/errors.hpp"
#include "fft.hpp"

namespace dcilink {

namespace {

constexpr double kSpeedOfLightMps = 299792458.0;

// Gray map: dibit value -> power level index. Adjacent levels differ in one
// bit of the dibit.
constexpr std::uint8_t kGrayDibitToLevel[4] = {0, 1, 3, 2};

// Differing bits between the Gray dibits of two levels.
constexpr int kBitErrors[4][4] = {
    {0, 1, 2, 1},
    {1, 0, 1, 2},
    {2, 1, 0, 1},
    {1, 2, 1, 0},
};

double level_power(std::uint8_t level) { return static_cast<double>(level) / 3.0; }

// splitmix64; used to expand one master seed into independent streams.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Gaussian sampler on raw engine output (Box-Muller); std::normal_distribution
// is implementation-defined, which would break cross-platform reproducibility.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
    }

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Zero-phase frequency-domain filter application on the periodic block.
template <typename MagnitudeFn>
void apply_zero_phase_filter(std::vector<std::complex<double>>& samples, double sample_rate_ghz,
                             MagnitudeFn magnitude) {
    detail::fft_inplace(samples, false);
    const auto freqs = detail::fft_frequencies(samples.size(), sample_rate_ghz);
    for (std::size_t k = 0; k < samples.size(); ++k) samples[k] *= magnitude(freqs[k]);
    detail::fft_inplace(samples, true);
}

double gaussian_lowpass_gain(double f_ghz, double bw3db_ghz) {
    const double x = f_ghz / bw3db_ghz;
    return std::exp(-0.5 * std::numbers::ln2 * x * x);
}

double butterworth_gain(double f_ghz, double bw3db_ghz, int order) {
    const double x = std::abs(f_ghz) / bw3db_ghz;
    return 1.0 / std::sqrt(1.0 + std::pow(x, 2 * order));
}

double raised_cosine_gain(double f_ghz, double baud_gbd, double rolloff) {
    const double t = 1.0 / baud_gbd;
    const double af = std::abs(f_ghz);
    const double f1 = (1.0 - rolloff) / (2.0 * t);
    const double f2 = (1.0 + rolloff) / (2.0 * t);
    if (af <= f1) return 1.0;
    if (af >= f2) return 0.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * t / rolloff * (af - f1)));
}

// Shared per-pipeline state: the clean transmitted field and the zero-CD
// reference metrics it produces.
struct PipelineReference {
    Pam4Signal signal;
    EyeMetrics reference;
};

EyeMetrics metrics_at_cd(const PipelineReference& ref, const WaveformConfig& config,
                         double acc_cd_ps_nm) {
    const OpticalField dispersed = apply_cd(ref.signal.field, acc_cd_ps_nm);
    const auto electrical =
        detect(dispersed, config.resolved_rx_bandwidth_ghz(), config.rx_filter_order);
    return eye_metrics(electrical, ref.signal.levels, config, &ref.reference);
}

PipelineReference make_reference(const WaveformConfig& config) {
    PipelineReference ref;
    ref.signal = generate_pam4(config);
    const auto electrical =
        detect(ref.signal.field, config.resolved_rx_bandwidth_ghz(), config.rx_filter_order);
    ref.reference = eye_metrics(electrical, ref.signal.levels, config, nullptr);
    return ref;
}

}  // namespace

void validate(const WaveformConfig& config) {
    if (!(config.baud_gbd > 0)) throw validation_error("waveform: baud > 0");
    if (config.samples_per_symbol < 4)
        throw validation_error("waveform: samples_per_symbol >= 4");
    if (config.symbol_count < 256) throw validation_error("waveform: symbol_count >= 256");
    if (config.guard_symbols < 0) throw validation_error("waveform: guard_symbols >= 0");
    if (2 * config.guard_symbols >= config.symbol_count)
        throw validation_error("waveform: guard symbols must leave a measurable interior");
    if (config.rx_filter_order < 1) throw validation_error("waveform: rx_filter_order >= 1");
    if (!(config.resolved_tx_bandwidth_ghz() > 0))
        throw validation_error("waveform: tx_bandwidth > 0");
    if (!(config.resolved_rx_bandwidth_ghz() > 0))
        throw validation_error("waveform: rx_bandwidth > 0");
    if (config.shaping == PulseShaping::RaisedCosine &&
        !(config.rc_rolloff >= 0.0 && config.rc_rolloff <= 1.0))
        throw validation_error("waveform: rc_rolloff in [0, 1]");
    if (!(config.center_wavelength_nm > 0))
        throw validation_error("waveform: center_wavelength > 0");
}

double OpticalField::energy() const {
    double sum = 0.0;
    for (const auto& a : samples) sum += std::norm(a);
    return sum / sample_rate_ghz;
}

double OpticalField::mean_power() const {
    if (samples.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& a : samples) sum += std::norm(a);
    return sum / static_cast<double>(samples.size());
}

std::vector<std::uint8_t> random_pam4_levels(int count, std::uint64_t seed) {
    std::vector<std::uint8_t> levels(count);
    std::mt19937_64 engine(seed);
    std::uint64_t word = 0;
    int bits_left = 0;
    for (int i = 0; i < count; ++i) {
        if (bits_left < 2) {
            word = engine();
            bits_left = 64;
        }
        levels[i] = kGrayDibitToLevel[word & 0x3];
        word >>= 2;
        bits_left -= 2;
    }
    return levels;
}

OpticalField modulate_pam4(const WaveformConfig& config, std::span<const std::uint8_t> levels) {
    validate(config);
    const int sps = config.samples_per_symbol;
    const std::size_t n = levels.size() * static_cast<std::size_t>(sps);

    std::vector<std::complex<double>> power(n);
    if (config.shaping == PulseShaping::NrzGaussian) {
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const double p = level_power(levels[k]);
            for (int s = 0; s < sps; ++s) power[k * sps + s] = p;
        }
        const double bw = config.resolved_tx_bandwidth_ghz();
        if (std::isfinite(bw)) {
            apply_zero_phase_filter(power, config.sample_rate_ghz(),
                                    [bw](double f) { return gaussian_lowpass_gain(f, bw); });
        }
    } else {
        // Impulse train at symbol centers through a raised-cosine spectrum,
        // normalized so an isolated symbol peaks at its nominal power.
        const int center = sps / 2;
        for (std::size_t k = 0; k < levels.size(); ++k)
            power[k * sps + center] = level_power(levels[k]) * sps;
        double dc_gain = 0.0;
        const auto freqs = detail::fft_frequencies(n, config.sample_rate_ghz());
        for (double f : freqs) dc_gain += raised_cosine_gain(f, config.baud_gbd, config.rc_rolloff);
        const double norm = dc_gain > 0 ? static_cast<double>(n) / dc_gain : 1.0;
        apply_zero_phase_filter(power, config.sample_rate_ghz(),
                                [&](double f) {
                                    return raised_cosine_gain(f, config.baud_gbd,
                                                              config.rc_rolloff);
                                });
        for (auto& p : power) p *= norm;
    }

    OpticalField field;
    field.sample_rate_ghz = config.sample_rate_ghz();
    field.center_wavelength_nm = config.center_wavelength_nm;
    field.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Shaping filters are non-negative in time for the NRZ+Gaussian
        // default; clamp the raised-cosine undershoot and FFT roundoff.
        const double p = std::max(power[i].real(), 0.0);
        field.samples[i] = std::sqrt(p);
    }
    return field;
}

Pam4Signal generate_pam4(const WaveformConfig& config) {
    validate(config);
    Pam4Signal signal;
    signal.levels = random_pam4_levels(config.symbol_count, config.rng_seed);
    signal.field = modulate_pam4(config, signal.levels);
    return signal;
}

OpticalField apply_cd(const OpticalField& field, double acc_cd_ps_nm) {
    if (field.samples.empty()) throw validation_error("apply_cd: field must be non-empty");
    OpticalField out = field;
    const double lambda_m = field.center_wavelength_nm * 1e-9;
    const double d_s_per_m = acc_cd_ps_nm * 1e-3;  // ps/nm = 1e-3 s/m
    const double coeff = std::numbers::pi * lambda_m * lambda_m * d_s_per_m / kSpeedOfLightMps;

    detail::fft_inplace(out.samples, false);
    const auto freqs = detail::fft_frequencies(out.samples.size(), field.sample_rate_ghz);
    for (std::size_t k = 0; k < out.samples.size(); ++k) {
        const double f_hz = freqs[k] * 1e9;
        const double phase = coeff * f_hz * f_hz;
        out.samples[k] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    detail::fft_inplace(out.samples, true);
    return out;
}

std::vector<double> detect(const OpticalField& field, double rx_bandwidth_ghz, int filter_order) {
    if (!(rx_bandwidth_ghz > 0)) throw validation_error("detect: rx_bandwidth > 0");
    std::vector<std::complex<double>> electrical(field.samples.size());
    for (std::size_t i = 0; i < field.samples.size(); ++i)
        electrical[i] = std::norm(field.samples[i]);
    if (std::isfinite(rx_bandwidth_ghz)) {
        apply_zero_phase_filter(electrical, field.sample_rate_ghz, [&](double f) {
            return butterworth_gain(f, rx_bandwidth_ghz, filter_order);
        });
    }
    std::vector<double> out(electrical.size());
    for (std::size_t i = 0; i < electrical.size(); ++i) out[i] = electrical[i].real();
    return out;
}

EyeMetrics eye_metrics(std::span<const double> electrical, std::span<const std::uint8_t> levels,
                       const WaveformConfig& config, const EyeMetrics* reference) {
    const int sps = config.samples_per_symbol;
    if (electrical.size() != levels.size() * static_cast<std::size_t>(sps))
        throw validation_error("eye_metrics: electrical length must be levels * samples_per_symbol");
    const std::size_t first = config.guard_symbols;
    const std::size_t last = levels.size() - config.guard_symbols;

    std::array<double, 3> best_openings{};
    double best_worst = -std::numeric_limits<double>::infinity();
    int best_phase = 0;

    for (int phase = 0; phase < sps; ++phase) {
        // Rails per eye: min over symbols at or above the threshold level,
        // max over symbols below it.
        std::array<double, 3> upper_min;
        std::array<double, 3> lower_max;
        upper_min.fill(std::numeric_limits<double>::infinity());
        lower_max.fill(-std::numeric_limits<double>::infinity());
        for (std::size_t k = first; k < last; ++k) {
            const double v = electrical[k * sps + phase];
            const int level = levels[k];
            for (int eye = 0; eye < 3; ++eye) {
                if (level >= eye + 1)
                    upper_min[eye] = std::min(upper_min[eye], v);
                else
                    lower_max[eye] = std::max(lower_max[eye], v);
            }
        }
        std::array<double, 3> openings;
        double worst = std::numeric_limits<double>::infinity();
        for (int eye = 0; eye < 3; ++eye) {
            openings[eye] = upper_min[eye] - lower_max[eye];
            worst = std::min(worst, openings[eye]);
        }
        if (worst > best_worst) {
            best_worst = worst;
            best_openings = openings;
            best_phase = phase;
        }
    }

    EyeMetrics metrics;
    metrics.sampling_phase = best_phase;
    metrics.worst_penalty_db = 0.0;
    for (int eye = 0; eye < 3; ++eye) {
        double opening = best_openings[eye];
        if (opening <= 0.0) {
            opening = 0.0;
            metrics.eye_closed = true;
        }
        metrics.eye_openings[eye] = opening;
        if (reference != nullptr) {
            const double ref_opening = reference->eye_openings[eye];
            metrics.penalties_db[eye] = opening > 0.0
                                            ? 10.0 * std::log10(ref_opening / opening)
                                            : kEyeClosedPenaltyDb;
        } else {
            metrics.penalties_db[eye] = 0.0;
        }
        metrics.worst_penalty_db = std::max(metrics.worst_penalty_db, metrics.penalties_db[eye]);
    }
    return metrics;
}

std::vector<CdSweepPoint> cd_penalty_sweep(const WaveformConfig& config,
                                           std::span<const double> cd_points_ps_nm) {
    validate(config);
    if (cd_points_ps_nm.empty() || cd_points_ps_nm.front() != 0.0)
        throw validation_error("cd_penalty_sweep: points must start at 0");
    if (!std::is_sorted(cd_points_ps_nm.begin(), cd_points_ps_nm.end()))
        throw validation_error("cd_penalty_sweep: points must be ascending");

    const PipelineReference ref = make_reference(config);
    std::vector<CdSweepPoint> curve(cd_points_ps_nm.size());

    // Static index partition over a small pool; per-point work is
    // independent, so scheduling cannot affect the values.
    const unsigned worker_count =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(cd_points_ps_nm.size()));
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
        workers.emplace_back([&, w]() {
            for (std::size_t i = w; i < cd_points_ps_nm.size(); i += worker_count) {
                const EyeMetrics m = metrics_at_cd(ref, config, cd_points_ps_nm[i]);
                curve[i] = CdSweepPoint{cd_points_ps_nm[i], m.worst_penalty_db, m.eye_closed};
            }
        });
    }
    for (auto& t : workers) t.join();
    return curve;
}

double find_cd_limit(const WaveformConfig& config, double penalty_criterion_db,
                     double search_max_ps_nm, double resolution_ps_nm) {
    validate(config);
    if (!(penalty_criterion_db > 0)) throw validation_error("find_cd_limit: criterion > 0");
    if (!(resolution_ps_nm > 0)) throw validation_error("find_cd_limit: resolution > 0");

    const PipelineReference ref = make_reference(config);
    const auto penalty_at = [&](double cd) {
        return metrics_at_cd(ref, config, cd).worst_penalty_db;
    };

    if (penalty_at(search_max_ps_nm) < penalty_criterion_db)
        throw validation_error("find_cd_limit: criterion unreachable within " +
                               std::to_string(search_max_ps_nm) + " ps/nm");

    double lo = 0.0;  // penalty 0 < criterion at the reference point
    double hi = search_max_ps_nm;
    while (hi - lo > resolution_ps_nm) {
        const double mid = 0.5 * (lo + hi);
        if (penalty_at(mid) >= penalty_criterion_db)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

OpticalField add_ase(const OpticalField& field, double osnr_db, const PhysicalConstants& constants,
                     std::uint64_t seed) {
    if (field.samples.empty()) throw validation_error("add_ase: field must be non-empty");
    const double signal_power = field.mean_power();
    if (!(signal_power > 0)) throw validation_error("add_ase: mean signal power must be positive");

    // Flat noise density across the whole simulation bandwidth, scaled so
    // the slice inside the reference bandwidth matches the requested OSNR.
    const double noise_in_ref = signal_power / std::pow(10.0, osnr_db / 10.0);
    const double total_noise = noise_in_ref * field.sample_rate_ghz / constants.ref_bandwidth_ghz;
    const double sigma = std::sqrt(total_noise / 2.0);

    OpticalField out = field;
    NormalSampler sampler(mix64(seed));
    for (auto& a : out.samples)
        a += std::complex<double>(sigma * sampler.next(), sigma * sampler.next());
    return out;
}

double ber(std::span<const double> electrical, std::span<const std::uint8_t> levels,
           const WaveformConfig& config) {
    const int sps = config.samples_per_symbol;
    if (electrical.size() != levels.size() * static_cast<std::size_t>(sps))
        throw validation_error("ber: electrical length must be levels * samples_per_symbol");
    const std::size_t first = config.guard_symbols;
    const std::size_t last = levels.size() - config.guard_symbols;
    const int phase = sps / 2;

    // Decision thresholds from measured level means (data-aided).
    std::array<double, 4> mean{};
    std::array<std::size_t, 4> count{};
    for (std::size_t k = first; k < last; ++k) {
        mean[levels[k]] += electrical[k * sps + phase];
        ++count[levels[k]];
    }
    for (int level = 0; level < 4; ++level) {
        // A level absent from the pattern falls back to its nominal rail.
        mean[level] = count[level] > 0 ? mean[level] / count[level] : level_power(level);
    }
    const std::array<double, 3> thresholds{0.5 * (mean[0] + mean[1]), 0.5 * (mean[1] + mean[2]),
                                           0.5 * (mean[2] + mean[3])};

    std::size_t bit_errors = 0;
    std::size_t symbols = 0;
    for (std::size_t k = first; k < last; ++k) {
        const double v = electrical[k * sps + phase];
        int decided = 0;
        while (decided < 3 && v > thresholds[decided]) ++decided;
        bit_errors += kBitErrors[levels[k]][decided];
        ++symbols;
    }
    return symbols > 0 ? static_cast<double>(bit_errors) / (2.0 * symbols) : 0.0;
}

std::vector<OsnrSweepPoint> osnr_ber_sweep(const WaveformConfig& config,
                                           std::span<const double> osnr_points_db,
                                           const PhysicalConstants& constants) {
    validate(config);
    const Pam4Signal signal = generate_pam4(config);
    std::vector<OsnrSweepPoint> curve(osnr_points_db.size());
    for (std::size_t i = 0; i < osnr_points_db.size(); ++i) {
        const OpticalField noisy = add_ase(signal.field, osnr_points_db[i], constants,
                                           derive_seed(config.rng_seed, i));
        const auto electrical =
            detect(noisy, config.resolved_rx_bandwidth_ghz(), config.rx_filter_order);
        curve[i] = OsnrSweepPoint{osnr_points_db[i], ber(electrical, signal.levels, config)};
    }
    return curve;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed ^ mix64(index + 1));
}

void write_cd_sweep_csv(std::ostream& out, std::span<const CdSweepPoint> points) {
    out << "acc_cd_ps_nm,worst_penalty_db\n";
    char line[96];
    for (const auto& p : points) {
        if (p.eye_closed && !std::isfinite(p.worst_penalty_db)) {
            std::snprintf(line, sizeof line, "%.10g,inf\n", p.acc_cd_ps_nm);
        } else {
            std::snprintf(line, sizeof line, "%.10g,%.10g\n", p.acc_cd_ps_nm, p.worst_penalty_db);
        }
        out << line;
    }
}

void write_osnr_sweep_csv(std::ostream& out, std::span<const OsnrSweepPoint> points) {
    out << "osnr_db,ber\n";
    char line[96];
    for (const auto& p : points) {
        std::snprintf(line, sizeof line, "%.10g,%.10g\n", p.osnr_db, p.ber);
        out << line;
    }
}

}  // namespace dcilink
