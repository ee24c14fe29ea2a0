#include "nlwt/signal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nlwt {

double mean_power(const std::vector<double>& samples) {
    if (samples.empty()) return 0.0;
    // Neumaier-compensated sum; the noise calibration contract is tighter
    // than what naive accumulation delivers at N ~ 1e5.
    double sum = 0.0, comp = 0.0;
    for (double x : samples) {
        const double term = x * x;
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(samples.size());
}

Signal normalize(const Signal& signal) {
    if (signal.samples.empty()) throw InvalidParameter("normalize: empty signal");
    double peak = 0.0;
    for (double x : signal.samples) {
        if (!std::isfinite(x)) throw InvalidParameter("normalize: non-finite sample");
        peak = std::max(peak, std::abs(x));
    }
    if (peak == 0.0) throw AllZeroSignal();
    Signal out = signal;
    for (double& x : out.samples) x /= peak;
    return out;
}

namespace {

struct EcgBump {
    double amplitude;
    double center; // fraction of the beat period
    double width;  // fraction of the beat period
};

// P, Q, R, S, T. Frozen constants; golden tests depend on them.
constexpr EcgBump kEcgBumps[5] = {
    {0.12, 0.20, 0.025},
    {-0.15, 0.36, 0.010},
    {1.00, 0.40, 0.012},
    {-0.25, 0.44, 0.010},
    {0.30, 0.65, 0.045},
};

} // namespace

Signal synth_ecg(std::uint32_t beats, double sample_rate_hz, double heart_rate_bpm,
                 std::uint64_t seed, double jitter_fraction) {
    if (beats < 1) throw InvalidParameter("synth_ecg: beats must be >= 1");
    if (!(sample_rate_hz > 0.0)) throw InvalidParameter("synth_ecg: sample rate must be positive");
    if (!(heart_rate_bpm > 0.0)) throw InvalidParameter("synth_ecg: heart rate must be positive");
    if (jitter_fraction < 0.0 || jitter_fraction > 0.02)
        throw InvalidParameter("synth_ecg: jitter fraction must be in [0, 0.02]");

    const double nominal_period_s = 60.0 / heart_rate_bpm;

    std::mt19937_64 engine(seed);
    std::vector<double> beat_start_s(beats + 1, 0.0);
    std::vector<double> beat_period_s(beats, nominal_period_s);
    for (std::uint32_t b = 0; b < beats; ++b) {
        if (jitter_fraction > 0.0) {
            // uniform in [-jitter, jitter] from the engine's raw output
            double u = static_cast<double>(engine() >> 11) * 0x1.0p-53; // [0,1)
            beat_period_s[b] = nominal_period_s * (1.0 + jitter_fraction * (2.0 * u - 1.0));
        }
        beat_start_s[b + 1] = beat_start_s[b] + beat_period_s[b];
    }

    const double total_s = beat_start_s[beats];
    const auto n = static_cast<std::size_t>(std::llround(total_s * sample_rate_hz));

    Signal out;
    out.sample_rate_hz = sample_rate_hz;
    out.label = "synth_ecg";
    out.samples.assign(n, 0.0);

    for (std::uint32_t b = 0; b < beats; ++b) {
        const double t0 = beat_start_s[b];
        const double period = beat_period_s[b];
        for (const EcgBump& bump : kEcgBumps) {
            const double mu = t0 + bump.center * period;
            const double sd = bump.width * period;
            // 6 sigma on either side covers the bump
            const auto lo = static_cast<std::ptrdiff_t>(std::floor((mu - 6.0 * sd) * sample_rate_hz));
            const auto hi = static_cast<std::ptrdiff_t>(std::ceil((mu + 6.0 * sd) * sample_rate_hz));
            for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(lo, 0);
                 i <= std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(n) - 1); ++i) {
                const double t = static_cast<double>(i) / sample_rate_hz;
                const double z = (t - mu) / sd;
                out.samples[static_cast<std::size_t>(i)] += bump.amplitude * std::exp(-0.5 * z * z);
            }
        }
    }
    return normalize(out);
}

} // namespace nlwt
