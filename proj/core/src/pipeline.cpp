#include "nlwt/pipeline.hpp"

#include <cmath>

#include "nlwt/parallel.hpp"
#include "nlwt/wavelet.hpp"

namespace nlwt {

double visu_coeff(std::size_t n) {
    if (n < 2) throw InvalidParameter("visu_coeff: need at least 2 coefficients");
    return std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

ShrunkSdm shrink_sdm(const Sdm& sdm, double sigma, const NlwtParams& params) {
    if (!(sigma > 0.0)) throw InvalidParameter("shrink_sdm: sigma must be > 0");

    const auto rows = static_cast<std::size_t>(sdm.matrix.rows());
    const auto cols = static_cast<std::size_t>(sdm.matrix.cols());
    // A requested depth is clamped per SDM: a sparsely matched reference can
    // produce a matrix too narrow for the full pyramid.
    const std::size_t levels =
        params.levels > 0
            ? std::max<std::size_t>(1, std::min(params.levels, max_dwt2_levels(rows, cols)))
            : default_dwt2_levels(rows, cols);

    const WaveletFilter filter = WaveletFilter::from_name(params.wavelet);
    Dwt2Coeffs coeffs = dwt2_forward(sdm.matrix, filter, levels);

    const double multiplier = params.threshold_rule == ThresholdRule::visu
                                  ? visu_coeff(coeffs.total_coeff_count())
                                  : params.c;
    auto [shrunk, retained] = hard_threshold(coeffs, multiplier * sigma);

    ShrunkSdm out;
    out.denoised = dwt2_inverse(shrunk, filter);
    out.retained_count = retained;
    // An all-zero SDM retains nothing; weight it as if one coefficient
    // survived so the division below stays defined.
    out.omega = 1.0 / (static_cast<double>(std::max<std::size_t>(retained, 1)) * sigma * sigma);
    out.locations = sdm.locations;
    return out;
}

void Aggregator::add(const ShrunkSdm& shrunk) {
    const auto rows = static_cast<std::size_t>(shrunk.denoised.rows());
    const std::size_t half = rows / 2;
    for (std::size_t col = 0; col < shrunk.locations.size(); ++col) {
        const std::size_t start = shrunk.locations[col] - half;
        for (std::size_t r = 0; r < rows; ++r) {
            weighted_sum[start + r] += shrunk.omega * shrunk.denoised(r, col);
            weight[start + r] += shrunk.omega;
        }
    }
}

std::vector<double> Aggregator::finalize() const {
    std::vector<double> out(weighted_sum.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (weight[i] <= 0.0) throw UncoveredSample(i);
        out[i] = weighted_sum[i] / weight[i];
    }
    return out;
}

std::vector<double> aggregate(std::span<const ShrunkSdm> shrunk, std::size_t n_samples) {
    Aggregator acc(n_samples);
    for (const ShrunkSdm& s : shrunk) acc.add(s);
    return acc.finalize();
}

Signal denoise_nlwt(const Signal& noisy, double sigma, const NlwtParams& params,
                    int workers) {
    params.validate();
    if (!(sigma > 0.0)) throw InvalidParameter("denoise_nlwt: sigma must be > 0");
    if (noisy.size() < params.block_len())
        throw SignalTooShort("denoise_nlwt: need at least 2L+1 = " +
                             std::to_string(params.block_len()) + " samples");

    const ReferenceSchedule schedule = reference_schedule(noisy.size(), params.L, params.k);
    const std::size_t n_refs = schedule.centers.size();

    // Projectors are fitted at every refit_every-th reference and shared by
    // the references in between.
    std::vector<FeatureProjector> projectors((n_refs + params.refit_every - 1) /
                                             params.refit_every);
    parallel_for(0, projectors.size(), workers, [&](std::size_t a) {
        projectors[a] = fit_projector(noisy, schedule.centers[a * params.refit_every], params);
    });

    std::vector<ShrunkSdm> shrunk(n_refs);
    parallel_for(0, n_refs, workers, [&](std::size_t s) {
        const FeatureProjector& proj = projectors[s / params.refit_every];
        Sdm sdm = extract_sdm(noisy, schedule.centers[s], params, proj);
        shrunk[s] = shrink_sdm(sdm, sigma, params);
    });

    // Merge in ascending reference-center order: addition order, and with it
    // the output bits, must not depend on the worker count.
    Signal out = noisy;
    out.samples = aggregate(shrunk, noisy.size());
    return out;
}

} // namespace nlwt
