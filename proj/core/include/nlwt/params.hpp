#ifndef NLWT_PARAMS_HPP
#define NLWT_PARAMS_HPP

#include <cstddef>
#include <string>

#include "nlwt/errors.hpp"
#include "nlwt/wavelet.hpp"

namespace nlwt {

enum class ProjectorKind { pca, dct };
enum class ThresholdRule { fixed, visu };

/// Tunables of the block-matching wavelet denoiser. Field names follow the
/// conventional notation: L block half-width, M search half-width, m block
/// cap per SDM, tau matching threshold, k reference shift, c shrinkage
/// multiplier.
struct NlwtParams {
    std::size_t L = 10;          // block half-width (samples)
    std::size_t M = 1000;        // search window half-width (samples)
    std::size_t m = 42;          // max blocks per SDM, 2*(2L+1) at L=10
    double tau = 1.2;            // matching threshold (squared amplitude)
    std::size_t k = 10;          // reference shift, 50% overlap at k=L
    double c = 3.8;              // shrinkage threshold multiplier
    WaveletName wavelet = WaveletName::haar;
    ProjectorKind projector = ProjectorKind::pca;
    std::size_t n_components = 5;
    ThresholdRule threshold_rule = ThresholdRule::fixed;
    std::size_t refit_every = 1; // reuse a projector for this many references
    std::size_t levels = 0;      // 2-D DWT depth; 0 = default_dwt2_levels

    std::size_t block_len() const { return 2 * L + 1; }

    /// Throws InvalidParameter with a message naming the legal range.
    void validate() const;

    /// Tuned values for ~360 Hz records.
    static NlwtParams defaults() { return {}; }

    /// L=20, M=4000, tau=1.8 for rates of 600 Hz and above, otherwise the
    /// 360 Hz tuning.
    static NlwtParams for_sample_rate(double fs_hz);
};

/// Tunables of the nonlocal-means baseline. The bandwidth mu is absolute;
/// pick it from the noise level with bandwidth_from_sigma (1.5 sigma by
/// default).
struct NlmParams {
    std::size_t patch_half_width = 10;
    std::size_t search_half_width = 1000;
    double mu = 0.0;
    bool exclude_center = false;

    std::size_t patch_len() const { return 2 * patch_half_width + 1; }
    void validate() const;

    static double bandwidth_from_sigma(double sigma, double factor = 1.5) {
        return factor * sigma;
    }
};

const char* to_string(ProjectorKind kind);
const char* to_string(ThresholdRule rule);
ProjectorKind projector_from_string(const std::string& s);
ThresholdRule threshold_rule_from_string(const std::string& s);

} // namespace nlwt

#endif
