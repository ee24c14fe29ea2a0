#ifndef NLWT_BLOCK_MATCH_HPP
#define NLWT_BLOCK_MATCH_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "nlwt/params.hpp"
#include "nlwt/signal.hpp"

namespace nlwt {

/// Reference-block centers L, L+k, L+2k, ... plus, when the last scheduled
/// block does not reach sample N-1, one tail center at N-1-L.
struct ReferenceSchedule {
    std::vector<std::size_t> centers;
    bool has_tail = false; // centers.back() is the appended tail block

    std::size_t arithmetic_count() const {
        return centers.size() - (has_tail ? 1 : 0);
    }
};

ReferenceSchedule reference_schedule(std::size_t n, std::size_t L, std::size_t k);

/// The (2L+1)-sample block centered at `center`.
Eigen::VectorXd extract_block(const Signal& v, std::size_t center, std::size_t L);

/// Orthonormal-row projection used by the block similarity measure.
/// Blocks are centered on a mean shared across the search window before
/// projecting, which leaves pairwise distances unchanged.
struct FeatureProjector {
    Eigen::MatrixXd basis; // n_components x (2L+1), rows orthonormal
    Eigen::VectorXd mean;  // shared window mean (zero for dct)
    ProjectorKind kind = ProjectorKind::dct;

    Eigen::VectorXd project(const Eigen::VectorXd& block) const {
        return basis * (block - mean);
    }
};

/// Learns the projection for one search window. pca: top n_components
/// eigenvectors of the mean-centered covariance of all candidate blocks,
/// eigenvalues descending, each eigenvector's sign fixed so its first
/// nonzero entry is positive. A window of identical blocks (zero
/// covariance) falls back to the dct basis. dct: the first n_components
/// rows of the orthonormal type-II DCT of size 2L+1, independent of the
/// window. Throws DegenerateWindow when fewer than 2 candidate blocks
/// exist.
FeatureProjector fit_projector(const Signal& v, std::size_t reference_center,
                               const NlwtParams& params);

/// Squared Euclidean distance between the two blocks' projections.
double similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                  const FeatureProjector& proj);

/// Similarity data matrix: similar blocks as columns, reference first.
struct Sdm {
    Eigen::MatrixXd matrix;             // (2L+1) x p, p <= m
    std::vector<std::size_t> locations; // block centers, locations[0] = reference
    std::size_t reference_center = 0;
    std::vector<double> distances;      // projected squared distances, ascending

    std::size_t block_count() const { return locations.size(); }
};

/// Gathers the SDM for one reference block: candidate centers step by one
/// sample over [ref-M, ref+M] clamped to the valid block range; candidates
/// with projected distance <= tau qualify, and when more than m qualify the
/// m smallest distances win. Ties break by smaller |j - ref|, then smaller
/// j. The reference block is always column 0.
Sdm extract_sdm(const Signal& v, std::size_t reference_center, const NlwtParams& params,
                const FeatureProjector& projector);

/// Convenience overload that fits the projector itself.
Sdm extract_sdm(const Signal& v, std::size_t reference_center, const NlwtParams& params);

} // namespace nlwt

#endif
