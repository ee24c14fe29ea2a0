#ifndef NLWT_NOISE_HPP
#define NLWT_NOISE_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "nlwt/signal.hpp"
#include "nlwt/wavelet.hpp"

namespace nlwt {

/// Calibrated additive white Gaussian noise.
struct NoiseSpec {
    double target_snr_db = 0.0;
    std::uint64_t seed = 0;
};

/// Streams standard normal deviates.
///
/// Generator: Box-Muller over raw std::mt19937_64 output (the engine's
/// output sequence is pinned by the C++ standard, and std::normal_distribution
/// is not, so the transform is done here). Uniforms are (x >> 11 + 1) * 2^-53
/// in (0,1] for the radius and (y >> 11) * 2^-53 in [0,1) for the angle;
/// both halves of each pair are consumed in order.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
    double next();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Adds zero-mean white Gaussian noise calibrated so that
/// sigma^2 = P / 10^(target_snr_db/10) with P the exact mean power of the
/// input. Returns the noisy signal and the sigma used. Deterministic in
/// (signal, spec). Throws AllZeroSignal when P == 0.
std::pair<Signal, double> add_awgn(const Signal& signal, const NoiseSpec& spec);

/// Robust noise-level estimate from the finest-scale detail coefficients:
/// median(|d1|) / 0.6745. Returns 0 for a noiseless smooth signal.
/// Throws SignalTooShort for signals with fewer than 4 samples.
double estimate_sigma(const Signal& noisy, const WaveletFilter& wavelet);

} // namespace nlwt

#endif
