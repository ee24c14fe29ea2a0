#include "nlwt/nlm.hpp"

#include <algorithm>
#include <cmath>

#include "nlwt/parallel.hpp"

namespace nlwt {

namespace {

// Flat squared patch distance over the overlap valid for both centers.
// Returns the overlap length through `count`.
double patch_distance(const std::vector<double>& v, std::size_t i, std::size_t j,
                      std::size_t half, std::size_t& count) {
    const std::size_t back = std::min({half, i, j});
    const std::size_t fwd = std::min({half, v.size() - 1 - i, v.size() - 1 - j});
    count = back + fwd + 1;
    double acc = 0.0;
    for (std::size_t o = 0; o <= back + fwd; ++o) {
        const double d = v[i - back + o] - v[j - back + o];
        acc += d * d;
    }
    return acc;
}

} // namespace

double nlm_weight(const Signal& v, std::size_t i, std::size_t j, const NlmParams& params) {
    params.validate();
    const std::size_t half = params.patch_half_width;
    if (i < half || i + half >= v.size() || j < half || j + half >= v.size())
        throw OutOfBounds("nlm_weight: patch out of bounds");
    std::size_t count = 0;
    const double d2 = patch_distance(v.samples, i, j, half, count);
    return std::exp(-d2 / (2.0 * static_cast<double>(params.patch_len()) * params.mu * params.mu));
}

Signal denoise_nlm(const Signal& noisy, const NlmParams& params, int workers) {
    params.validate();
    const std::size_t n = noisy.size();
    if (n <= 2 * (params.patch_half_width + params.search_half_width))
        throw SignalTooShort("denoise_nlm: need more than 2*(patch+search half-widths) = " +
                             std::to_string(2 * (params.patch_half_width +
                                                 params.search_half_width)) +
                             " samples");

    const std::vector<double>& v = noisy.samples;
    const double inv_two_mu2 = 1.0 / (2.0 * params.mu * params.mu);

    Signal out = noisy;
    parallel_for(0, n, workers, [&](std::size_t i) {
        const std::size_t lo = i > params.search_half_width ? i - params.search_half_width : 0;
        const std::size_t hi = std::min(n - 1, i + params.search_half_width);
        double weight_total = 0.0;
        double centered_acc = 0.0; // sum w * (v[j] - v[i]); keeps constants exact
        for (std::size_t j = lo; j <= hi; ++j) {
            if (params.exclude_center && j == i) continue;
            std::size_t count = 0;
            const double d2 = patch_distance(v, i, j, params.patch_half_width, count);
            const double w = std::exp(-d2 * inv_two_mu2 / static_cast<double>(count));
            weight_total += w;
            centered_acc += w * (v[j] - v[i]);
        }
        out.samples[i] = v[i] + centered_acc / weight_total;
    });
    return out;
}

} // namespace nlwt
