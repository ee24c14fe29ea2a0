#ifndef NLWT_SIGNAL_HPP
#define NLWT_SIGNAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nlwt/errors.hpp"

namespace nlwt {

/// A uniformly sampled real-valued 1-D record.
struct Signal {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;
    std::string label;

    std::size_t size() const { return samples.size(); }
};

/// Scales the signal so that max |sample| == 1. Idempotent bit-exactly.
/// Throws AllZeroSignal when the input is identically zero.
Signal normalize(const Signal& signal);

/// Mean power (1/N) * sum(x^2).
double mean_power(const std::vector<double>& samples);

/// Deterministic quasi-periodic ECG-like test waveform, normalized to +-1.
///
/// Each beat is the sum of five Gaussian bumps with fixed constants
/// (amplitude in mV, center and width as fractions of the beat period):
///
///   P:  0.12 at 0.20, width 0.025
///   Q: -0.15 at 0.36, width 0.010
///   R:  1.00 at 0.40, width 0.012
///   S: -0.25 at 0.44, width 0.010
///   T:  0.30 at 0.65, width 0.045
///
/// Beat periods get a seeded uniform jitter of +-jitter_fraction (default
/// 2%). jitter_fraction = 0 gives an exactly periodic waveform.
Signal synth_ecg(std::uint32_t beats, double sample_rate_hz, double heart_rate_bpm,
                 std::uint64_t seed, double jitter_fraction = 0.02);

} // namespace nlwt

#endif
