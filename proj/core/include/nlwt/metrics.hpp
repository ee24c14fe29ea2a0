#ifndef NLWT_METRICS_HPP
#define NLWT_METRICS_HPP

#include <optional>

#include "nlwt/signal.hpp"

namespace nlwt {

/// SNR improvement in dB: 10*log10( sum(v-u)^2 / sum(u_hat-u)^2 ).
/// Returns nullopt when denoised == clean bit-exactly (perfect
/// reconstruction; serialized as null with a "perfect" flag).
std::optional<double> snr_improvement(const Signal& clean, const Signal& noisy,
                                      const Signal& denoised);

/// (1/N) * sum (u_hat - u)^2
double mse(const Signal& clean, const Signal& denoised);

/// 100 * sqrt( MSE / mean power of clean ). Throws AllZeroSignal when the
/// clean signal is identically zero.
double prd(const Signal& clean, const Signal& denoised);

} // namespace nlwt

#endif
