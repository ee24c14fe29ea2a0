#include "nlwt/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlwt {

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const std::uint64_t a = engine_();
    const std::uint64_t b = engine_();
    const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53; // (0,1]
    const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;         // [0,1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::pair<Signal, double> add_awgn(const Signal& signal, const NoiseSpec& spec) {
    const double power = mean_power(signal.samples);
    if (power == 0.0) throw AllZeroSignal("add_awgn: signal has zero power");

    const double sigma = std::sqrt(power / std::pow(10.0, spec.target_snr_db / 10.0));
    GaussianStream gauss(spec.seed);

    Signal noisy = signal;
    for (double& x : noisy.samples) x += sigma * gauss.next();
    return {std::move(noisy), sigma};
}

double estimate_sigma(const Signal& noisy, const WaveletFilter& wavelet) {
    if (noisy.size() < 4) throw SignalTooShort("estimate_sigma: need at least 4 samples");
    Dwt1Pyramid pyramid = dwt1_forward(noisy.samples, wavelet, 1);

    std::vector<double> mags(pyramid.details[0].size());
    std::transform(pyramid.details[0].begin(), pyramid.details[0].end(), mags.begin(),
                   [](double d) { return std::abs(d); });
    std::sort(mags.begin(), mags.end());
    const std::size_t n = mags.size();
    const double median =
        (n % 2 == 1) ? mags[n / 2] : 0.5 * (mags[n / 2 - 1] + mags[n / 2]);
    return median / 0.6745;
}

} // namespace nlwt
