#include "nlwt/metrics.hpp"

#include <cmath>

namespace nlwt {

namespace {

void check_lengths(const Signal& a, const Signal& b) {
    if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
}

double sum_squared_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

} // namespace

std::optional<double> snr_improvement(const Signal& clean, const Signal& noisy,
                                      const Signal& denoised) {
    check_lengths(clean, noisy);
    check_lengths(clean, denoised);
    const double num = sum_squared_diff(noisy.samples, clean.samples);
    const double den = sum_squared_diff(denoised.samples, clean.samples);
    if (den == 0.0) return std::nullopt;
    return 10.0 * std::log10(num / den);
}

double mse(const Signal& clean, const Signal& denoised) {
    check_lengths(clean, denoised);
    if (clean.samples.empty()) throw InvalidParameter("mse: empty signal");
    return sum_squared_diff(denoised.samples, clean.samples) /
           static_cast<double>(clean.size());
}

double prd(const Signal& clean, const Signal& denoised) {
    const double power = mean_power(clean.samples);
    if (power == 0.0) throw AllZeroSignal("prd: clean signal has zero power");
    return 100.0 * std::sqrt(mse(clean, denoised) / power);
}

} // namespace nlwt
