#ifndef NLWT_WAVELET_HPP
#define NLWT_WAVELET_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nlwt/errors.hpp"

namespace nlwt {

enum class WaveletName { haar, db2, db4, sym4 };

/// Orthonormal wavelet filter pair. Only the analysis lowpass is stored;
/// the highpass is the quadrature mirror g[i] = (-1)^i h[F-1-i] and the
/// synthesis bank is the transpose of the analysis bank.
struct WaveletFilter {
    WaveletName name;
    std::vector<double> lowpass;

    std::vector<double> highpass() const;
    static WaveletFilter from_name(WaveletName name);
    static WaveletFilter from_name(const std::string& name);
    const char* name_str() const;
};

/// One-dimensional Mallat pyramid.
/// details[0] is the finest scale. input_lengths[l] is the length fed to
/// level l+1 before any padding; odd lengths are replicate-padded by one
/// sample and transformed periodically.
struct Dwt1Pyramid {
    std::vector<double> approx;
    std::vector<std::vector<double>> details;
    std::vector<std::size_t> input_lengths;

    std::size_t level_count() const { return details.size(); }
};

Dwt1Pyramid dwt1_forward(const std::vector<double>& x, const WaveletFilter& filter,
                         std::size_t levels);
std::vector<double> dwt1_inverse(const Dwt1Pyramid& pyramid, const WaveletFilter& filter);

/// Subbands of one 2-D decomposition level. Naming: first letter is the
/// row axis, second the column axis; lh = lowpass rows, highpass columns.
/// For a single-column input the column axis is left untouched, the level
/// detail lands in hl and lh/hh stay empty.
struct Dwt2Level {
    Eigen::MatrixXd lh, hl, hh;
    std::size_t in_rows = 0; // shape fed to this level, before padding
    std::size_t in_cols = 0;
};

/// Separable 2-D DWT coefficients. levels[0] is the finest scale; ll is
/// kept only at the coarsest level.
struct Dwt2Coeffs {
    Eigen::MatrixXd ll;
    std::vector<Dwt2Level> levels;

    std::size_t level_count() const { return levels.size(); }
    std::size_t original_rows() const { return levels.empty() ? 0 : levels.front().in_rows; }
    std::size_t original_cols() const { return levels.empty() ? 0 : levels.front().in_cols; }
    /// Total coefficient count, padding included.
    std::size_t total_coeff_count() const;
};

/// Deepest decomposition this library will run on the given shape: the
/// number of ceil-halvings that take the governing axis to one sample.
/// An n x 1 matrix is governed by its row count (the transform degrades
/// to 1-D along rows); otherwise the smaller axis governs.
std::size_t max_levels_1d(std::size_t n);
std::size_t max_dwt2_levels(std::size_t rows, std::size_t cols);

/// Default depth: min(3, floor(log2(governing axis))), at least 1.
std::size_t default_dwt2_levels(std::size_t rows, std::size_t cols);

/// Forward separable transform, rows then columns per level, recursing on
/// LL. Odd axis lengths are replicate-padded by one sample at each level;
/// the transform itself uses periodic extension.
Dwt2Coeffs dwt2_forward(const Eigen::MatrixXd& x, const WaveletFilter& filter,
                        std::size_t levels);

/// Exact inverse; crops each level's padding back to its recorded shape.
Eigen::MatrixXd dwt2_inverse(const Dwt2Coeffs& coeffs, const WaveletFilter& filter);

/// Hard shrinkage of detail coefficients: t -> t if |t| >= lambda else 0.
/// The coarsest LL passes through unmodified. The returned count is the
/// number of nonzero coefficients after shrinkage over all subbands,
/// LL included.
std::pair<Dwt2Coeffs, std::size_t> hard_threshold(const Dwt2Coeffs& coeffs, double lambda);

/// Soft shrinkage of detail coefficients: sign(t) * max(|t|-lambda, 0).
Dwt2Coeffs soft_threshold(const Dwt2Coeffs& coeffs, double lambda);

} // namespace nlwt

#endif
