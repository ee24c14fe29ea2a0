#include "nlwt/block_match.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace nlwt {

namespace {

struct CandidateRange {
    std::size_t lo;
    std::size_t hi; // inclusive
    std::size_t count() const { return hi - lo + 1; }
};

CandidateRange candidate_range(std::size_t n, std::size_t reference_center,
                               std::size_t L, std::size_t M) {
    const std::size_t first_valid = L;
    const std::size_t last_valid = n - 1 - L;
    CandidateRange r;
    r.lo = reference_center > M ? std::max(reference_center - M, first_valid) : first_valid;
    r.hi = std::min(reference_center + M, last_valid);
    return r;
}

// Blocks of the window as columns.
Eigen::MatrixXd window_blocks(const Signal& v, const CandidateRange& range, std::size_t L) {
    const std::size_t dim = 2 * L + 1;
    Eigen::MatrixXd blocks(dim, range.count());
    for (std::size_t j = range.lo; j <= range.hi; ++j) {
        for (std::size_t r = 0; r < dim; ++r) {
            blocks(r, j - range.lo) = v.samples[j - L + r];
        }
    }
    return blocks;
}

Eigen::MatrixXd dct_basis(std::size_t n_components, std::size_t dim) {
    Eigen::MatrixXd basis(n_components, dim);
    for (std::size_t p = 0; p < n_components; ++p) {
        const double scale = std::sqrt((p == 0 ? 1.0 : 2.0) / static_cast<double>(dim));
        for (std::size_t q = 0; q < dim; ++q) {
            basis(p, q) = scale * std::cos(std::numbers::pi * (2.0 * q + 1.0) * p /
                                           (2.0 * static_cast<double>(dim)));
        }
    }
    return basis;
}

} // namespace

ReferenceSchedule reference_schedule(std::size_t n, std::size_t L, std::size_t k) {
    if (k < 1) throw InvalidParameter("reference_schedule: k must be >= 1");
    if (n < 2 * L + 1)
        throw SignalTooShort("reference_schedule: need at least 2L+1 = " +
                             std::to_string(2 * L + 1) + " samples, got " + std::to_string(n));
    ReferenceSchedule schedule;
    const std::size_t last_valid = n - 1 - L;
    for (std::size_t center = L; center <= last_valid; center += k) {
        schedule.centers.push_back(center);
    }
    if (schedule.centers.back() != last_valid) {
        schedule.centers.push_back(last_valid);
        schedule.has_tail = true;
    }
    return schedule;
}

Eigen::VectorXd extract_block(const Signal& v, std::size_t center, std::size_t L) {
    if (center < L || center + L >= v.size())
        throw OutOfBounds("extract_block: center " + std::to_string(center) +
                          " with half-width " + std::to_string(L) + " exceeds [0, " +
                          std::to_string(v.size()) + ")");
    Eigen::VectorXd block(2 * L + 1);
    for (std::size_t r = 0; r < 2 * L + 1; ++r) block[r] = v.samples[center - L + r];
    return block;
}

FeatureProjector fit_projector(const Signal& v, std::size_t reference_center,
                               const NlwtParams& params) {
    params.validate();
    const std::size_t dim = params.block_len();
    if (reference_center < params.L || reference_center + params.L >= v.size())
        throw OutOfBounds("fit_projector: invalid reference center");

    if (params.projector == ProjectorKind::dct) {
        FeatureProjector proj;
        proj.kind = ProjectorKind::dct;
        proj.basis = dct_basis(params.n_components, dim);
        proj.mean = Eigen::VectorXd::Zero(dim);
        return proj;
    }

    const CandidateRange range = candidate_range(v.size(), reference_center, params.L, params.M);
    if (range.count() < 2)
        throw DegenerateWindow("fit_projector: fewer than 2 candidate blocks");

    Eigen::MatrixXd blocks = window_blocks(v, range, params.L);
    const Eigen::VectorXd mean = blocks.rowwise().mean();
    blocks.colwise() -= mean;

    // A window of (near-)identical blocks has no principal directions;
    // use the fixed dct basis there instead.
    const double centered_energy = blocks.squaredNorm();
    const double total_energy = centered_energy + static_cast<double>(range.count()) *
                                                      mean.squaredNorm();
    if (centered_energy <= 1e-20 * total_energy || total_energy == 0.0) {
        FeatureProjector proj;
        proj.kind = ProjectorKind::dct;
        proj.basis = dct_basis(params.n_components, dim);
        proj.mean = Eigen::VectorXd::Zero(dim);
        return proj;
    }

    const Eigen::MatrixXd covariance =
        blocks * blocks.transpose() / static_cast<double>(range.count() - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
    if (solver.info() != Eigen::Success)
        throw DegenerateWindow("fit_projector: eigendecomposition failed");

    // Eigen orders eigenvalues ascending; take the top ones descending and
    // fix each sign so the first non-negligible entry is positive.
    FeatureProjector proj;
    proj.kind = ProjectorKind::pca;
    proj.mean = mean;
    proj.basis.resize(params.n_components, dim);
    for (std::size_t p = 0; p < params.n_components; ++p) {
        Eigen::VectorXd vec = solver.eigenvectors().col(dim - 1 - p);
        for (Eigen::Index r = 0; r < vec.size(); ++r) {
            if (std::abs(vec[r]) > 1e-12) {
                if (vec[r] < 0.0) vec = -vec;
                break;
            }
        }
        proj.basis.row(p) = vec.transpose();
    }
    return proj;
}

double similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                  const FeatureProjector& proj) {
    if (a.size() != b.size())
        throw LengthMismatch(static_cast<std::size_t>(a.size()),
                             static_cast<std::size_t>(b.size()));
    return (proj.project(a) - proj.project(b)).squaredNorm();
}

Sdm extract_sdm(const Signal& v, std::size_t reference_center, const NlwtParams& params,
                const FeatureProjector& projector) {
    params.validate();
    const std::size_t dim = params.block_len();
    if (reference_center < params.L || reference_center + params.L >= v.size())
        throw OutOfBounds("extract_sdm: invalid reference center");

    const CandidateRange range = candidate_range(v.size(), reference_center, params.L, params.M);
    Eigen::MatrixXd blocks = window_blocks(v, range, params.L);
    Eigen::MatrixXd projections = projector.basis * (blocks.colwise() - projector.mean);
    const Eigen::VectorXd ref_projection = projections.col(reference_center - range.lo);

    struct Candidate {
        double distance;
        std::size_t offset_from_ref;
        std::size_t center;
    };
    std::vector<Candidate> kept;
    kept.reserve(range.count());
    for (std::size_t j = range.lo; j <= range.hi; ++j) {
        const double d = (projections.col(j - range.lo) - ref_projection).squaredNorm();
        if (j == reference_center || d <= params.tau) {
            const std::size_t offset =
                j > reference_center ? j - reference_center : reference_center - j;
            kept.push_back({j == reference_center ? 0.0 : d, offset, j});
        }
    }
    std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        if (a.offset_from_ref != b.offset_from_ref) return a.offset_from_ref < b.offset_from_ref;
        return a.center < b.center;
    });
    if (kept.size() > params.m) kept.resize(params.m);

    Sdm sdm;
    sdm.reference_center = reference_center;
    sdm.matrix.resize(dim, kept.size());
    sdm.locations.reserve(kept.size());
    sdm.distances.reserve(kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c) {
        sdm.matrix.col(c) = blocks.col(kept[c].center - range.lo);
        sdm.locations.push_back(kept[c].center);
        sdm.distances.push_back(kept[c].distance);
    }
    return sdm;
}

Sdm extract_sdm(const Signal& v, std::size_t reference_center, const NlwtParams& params) {
    return extract_sdm(v, reference_center, params, fit_projector(v, reference_center, params));
}

} // namespace nlwt
