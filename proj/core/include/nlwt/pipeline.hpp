#ifndef NLWT_PIPELINE_HPP
#define NLWT_PIPELINE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "nlwt/block_match.hpp"
#include "nlwt/params.hpp"
#include "nlwt/signal.hpp"

namespace nlwt {

/// A denoised SDM together with its aggregation weight.
struct ShrunkSdm {
    Eigen::MatrixXd denoised;           // same shape as the source matrix
    std::size_t retained_count = 0;     // nonzero coefficients after shrinkage
    double omega = 0.0;                 // 1 / (max(retained_count,1) * sigma^2)
    std::vector<std::size_t> locations; // copied from the source Sdm
};

/// VisuShrink multiplier sqrt(2 ln n). Throws InvalidParameter for n < 2.
double visu_coeff(std::size_t n);

/// Denoises one SDM: 2-D DWT, hard shrinkage at lambda = c * sigma (or
/// visu_coeff(total coefficients) * sigma under the visu rule), inverse
/// transform. An all-zero SDM retains nothing; its weight is defined as
/// 1/sigma^2.
ShrunkSdm shrink_sdm(const Sdm& sdm, double sigma, const NlwtParams& params);

/// Per-sample accumulators for the weighted overlap average. Merge order
/// is the caller's; the pipeline adds SDMs in ascending reference-center
/// order so that results do not depend on the worker count.
struct Aggregator {
    std::vector<double> weighted_sum;
    std::vector<double> weight;

    explicit Aggregator(std::size_t n) : weighted_sum(n, 0.0), weight(n, 0.0) {}
    void add(const ShrunkSdm& shrunk);
    /// Throws UncoveredSample if any sample got no estimate.
    std::vector<double> finalize() const;
};

/// Weighted average of every block estimate of every sample. Each
/// occurrence of a sample inside an SDM counts as one estimate carrying
/// that SDM's omega.
std::vector<double> aggregate(std::span<const ShrunkSdm> shrunk, std::size_t n_samples);

/// Full pipeline: reference schedule -> SDM extraction -> per-SDM 2-D
/// wavelet shrinkage -> weighted aggregation. Output is bit-identical for
/// any worker count. Throws SignalTooShort when N < 2L+1 and
/// InvalidParameter when sigma <= 0.
Signal denoise_nlwt(const Signal& noisy, double sigma, const NlwtParams& params,
                    int workers = 1);

} // namespace nlwt

#endif
