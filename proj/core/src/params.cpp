#include "nlwt/params.hpp"

namespace nlwt {

void NlwtParams::validate() const {
    if (L < 1)
        throw InvalidParameter("L (block half-width) must be >= 1; tuning range 0.01*fs .. 0.1*fs samples");
    if (M < 1)
        throw InvalidParameter("M (search half-width) must be >= 1; typically 3-5 heart beats");
    if (m < 1) throw InvalidParameter("m (max blocks per SDM) must be >= 1");
    if (!(tau >= 0.0))
        throw InvalidParameter("tau (matching threshold) must be >= 0; tuning range 1-5% of 2*(2L+1)");
    if (k < 1 || k >= 2 * L + 1)
        throw InvalidParameter("k (reference shift) must satisfy 0 < k < 2L+1");
    if (!(c > 0.0))
        throw InvalidParameter("c (shrinkage multiplier) must be > 0; tuned about 2*sqrt(log(2L+1))");
    if (n_components < 1 || n_components > 2 * L + 1)
        throw InvalidParameter("n_components must be in [1, 2L+1]");
    if (refit_every < 1) throw InvalidParameter("refit_every must be >= 1");
}

NlwtParams NlwtParams::for_sample_rate(double fs_hz) {
    if (!(fs_hz > 0.0)) throw InvalidParameter("sample rate must be positive");
    NlwtParams p;
    if (fs_hz >= 600.0) {
        p.L = 20;
        p.M = 4000;
        p.tau = 1.8;
        p.k = 20;
        p.m = 2 * (2 * p.L + 1);
    }
    return p;
}

void NlmParams::validate() const {
    if (patch_half_width < 1) throw InvalidParameter("patch_half_width must be >= 1");
    if (search_half_width < 1) throw InvalidParameter("search_half_width must be >= 1");
    if (!(mu > 0.0)) throw InvalidParameter("mu (bandwidth) must be > 0");
}

const char* to_string(ProjectorKind kind) {
    return kind == ProjectorKind::pca ? "pca" : "dct";
}

const char* to_string(ThresholdRule rule) {
    return rule == ThresholdRule::fixed ? "fixed" : "visu";
}

ProjectorKind projector_from_string(const std::string& s) {
    if (s == "pca") return ProjectorKind::pca;
    if (s == "dct") return ProjectorKind::dct;
    throw InvalidParameter("unknown projector \"" + s + "\" (pca, dct)");
}

ThresholdRule threshold_rule_from_string(const std::string& s) {
    if (s == "fixed") return ThresholdRule::fixed;
    if (s == "visu") return ThresholdRule::visu;
    throw InvalidParameter("unknown threshold rule \"" + s + "\" (fixed, visu)");
}

} // namespace nlwt
