#ifndef NLWT_NLM_HPP
#define NLWT_NLM_HPP

#include <cstddef>

#include "nlwt/params.hpp"
#include "nlwt/signal.hpp"

namespace nlwt {

/// exp( -d^2(v[i],v[j]) / (2 * L_patch * mu^2) ) with d^2 the flat
/// (unweighted) squared distance between the two patches. Requires both
/// patches fully in bounds; denoise_nlm clamps instead near the edges.
double nlm_weight(const Signal& v, std::size_t i, std::size_t j, const NlmParams& params);

/// Per-sample weighted average over the clamped search window. Boundary
/// samples use the clamped patch overlap, with the distance normalized by
/// the actual overlap length. Throws SignalTooShort when
/// N <= 2*(patch_half_width + search_half_width).
Signal denoise_nlm(const Signal& noisy, const NlmParams& params, int workers = 1);

} // namespace nlwt

#endif
