#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace dcilink::detail {

namespace {

std::mutex g_planner_mutex;
std::map<std::pair<std::size_t, bool>, fftw_plan> g_plans;

fftw_plan plan_for(std::size_t n, bool inverse) {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    const auto key = std::make_pair(n, inverse);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;
    // FFTW_UNALIGNED lets the plan execute on any std::vector storage;
    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                      inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    g_plans.emplace(key, plan);
    return plan;
}

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
    if (data.empty()) return;
    fftw_plan plan = plan_for(data.size(), inverse);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(data.size());
        for (auto& x : data) x *= scale;
    }
}

std::vector<double> fft_frequencies(std::size_t n, double sample_rate) {
    std::vector<double> freqs(n);
    const double df = sample_rate / static_cast<double>(n);
    const auto first_negative = static_cast<std::ptrdiff_t>((n + 1) / 2);
    for (std::size_t k = 0; k < n; ++k) {
        const auto signed_k = static_cast<std::ptrdiff_t>(k);
        freqs[k] = df * static_cast<double>(signed_k < first_negative
                                                ? signed_k
                                                : signed_k - static_cast<std::ptrdiff_t>(n));
    }
    return freqs;
}

}  // namespace dcilink::detail
