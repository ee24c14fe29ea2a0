#include "nlwt/wavelet.hpp"

#include <cmath>
#include <limits>

namespace nlwt {

namespace {

// Analysis lowpass banks, 15 significant digits. Highpass and synthesis
// come from the quadrature-mirror relations.
const std::vector<double> kHaar = {
    0.707106781186548, 0.707106781186548};

const std::vector<double> kDb2 = {
    0.482962913144690, 0.836516303737469, 0.224143868041857, -0.129409522550921};

const std::vector<double> kDb4 = {
    0.230377813308855,  0.714846570552542,  0.630880767929590,  -0.0279837694169838,
    -0.187034811718881, 0.0308413818359870, 0.0328830116669829, -0.0105974017849973};

const std::vector<double> kSym4 = {
    0.0322231006040427, -0.0126039672620378, -0.0992195435768472, 0.297857795605277,
    0.803738751805916,  0.497618667632015,   -0.0296355276459985, -0.0757657147892733};

// One analysis step on an even-length slice, periodic extension:
//   a[k] = sum_i h[i] x[(2k+i) mod n],  d[k] likewise with g.
void analyze_periodic(const double* x, std::size_t n, const std::vector<double>& h,
                      const std::vector<double>& g, double* a, double* d,
                      std::size_t stride = 1) {
    const std::size_t f = h.size();
    for (std::size_t k = 0; k < n / 2; ++k) {
        double sa = 0.0, sd = 0.0;
        for (std::size_t i = 0; i < f; ++i) {
            const double xv = x[((2 * k + i) % n) * stride];
            sa += h[i] * xv;
            sd += g[i] * xv;
        }
        a[k * stride] = sa;
        d[k * stride] = sd;
    }
}

// Transpose of the analysis step (exact inverse for orthonormal banks).
void synthesize_periodic(const double* a, const double* d, std::size_t n,
                         const std::vector<double>& h, const std::vector<double>& g,
                         double* x, std::size_t stride = 1) {
    const std::size_t f = h.size();
    for (std::size_t j = 0; j < n; ++j) x[j * stride] = 0.0;
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double av = a[k * stride];
        const double dv = d[k * stride];
        for (std::size_t i = 0; i < f; ++i) {
            x[((2 * k + i) % n) * stride] += h[i] * av + g[i] * dv;
        }
    }
}

Eigen::MatrixXd pad_matrix(const Eigen::MatrixXd& x, bool pad_row, bool pad_col) {
    if (!pad_row && !pad_col) return x;
    Eigen::MatrixXd out(x.rows() + (pad_row ? 1 : 0), x.cols() + (pad_col ? 1 : 0));
    out.topLeftCorner(x.rows(), x.cols()) = x;
    if (pad_row) out.row(x.rows()).head(x.cols()) = x.row(x.rows() - 1);
    if (pad_col) out.col(x.cols()).head(x.rows()) = x.col(x.cols() - 1);
    if (pad_row && pad_col) out(x.rows(), x.cols()) = x(x.rows() - 1, x.cols() - 1);
    return out;
}

} // namespace

std::vector<double> WaveletFilter::highpass() const {
    const std::size_t f = lowpass.size();
    std::vector<double> g(f);
    for (std::size_t i = 0; i < f; ++i) {
        const double v = lowpass[f - 1 - i];
        g[i] = (i % 2 == 0) ? v : -v;
    }
    return g;
}

WaveletFilter WaveletFilter::from_name(WaveletName name) {
    switch (name) {
        case WaveletName::haar: return {name, kHaar};
        case WaveletName::db2: return {name, kDb2};
        case WaveletName::db4: return {name, kDb4};
        case WaveletName::sym4: return {name, kSym4};
    }
    throw InvalidParameter("unknown wavelet");
}

WaveletFilter WaveletFilter::from_name(const std::string& name) {
    if (name == "haar" || name == "db1") return from_name(WaveletName::haar);
    if (name == "db2") return from_name(WaveletName::db2);
    if (name == "db4") return from_name(WaveletName::db4);
    if (name == "sym4") return from_name(WaveletName::sym4);
    throw InvalidParameter("unknown wavelet \"" + name + "\" (haar, db2, db4, sym4)");
}

const char* WaveletFilter::name_str() const {
    switch (name) {
        case WaveletName::haar: return "haar";
        case WaveletName::db2: return "db2";
        case WaveletName::db4: return "db4";
        case WaveletName::sym4: return "sym4";
    }
    return "?";
}

std::size_t max_levels_1d(std::size_t n) {
    std::size_t levels = 0;
    while (n >= 2) {
        n = (n + 1) / 2;
        ++levels;
    }
    return levels;
}

std::size_t max_dwt2_levels(std::size_t rows, std::size_t cols) {
    if (rows < 2 || cols < 1) return 0;
    if (cols == 1) return max_levels_1d(rows);
    return std::min(max_levels_1d(rows), max_levels_1d(cols));
}

std::size_t default_dwt2_levels(std::size_t rows, std::size_t cols) {
    const std::size_t governing = (cols == 1) ? rows : std::min(rows, cols);
    std::size_t log2_floor = 0;
    for (std::size_t v = governing; v >= 2; v /= 2) ++log2_floor;
    const std::size_t cap = max_dwt2_levels(rows, cols);
    return std::max<std::size_t>(1, std::min({std::size_t{3}, log2_floor, cap}));
}

Dwt1Pyramid dwt1_forward(const std::vector<double>& x, const WaveletFilter& filter,
                         std::size_t levels) {
    if (levels < 1) throw InvalidLevels("dwt1_forward: levels must be >= 1");
    if (x.size() < filter.lowpass.size())
        throw SignalTooShort("dwt1_forward: signal shorter than the filter");
    if (levels > max_levels_1d(x.size()))
        throw InvalidLevels("dwt1_forward: at most " +
                            std::to_string(max_levels_1d(x.size())) + " levels for length " +
                            std::to_string(x.size()));

    const std::vector<double> h = filter.lowpass;
    const std::vector<double> g = filter.highpass();

    Dwt1Pyramid out;
    std::vector<double> cur = x;
    for (std::size_t level = 0; level < levels; ++level) {
        out.input_lengths.push_back(cur.size());
        if (cur.size() % 2 == 1) cur.push_back(cur.back());
        const std::size_t half = cur.size() / 2;
        std::vector<double> a(half), d(half);
        analyze_periodic(cur.data(), cur.size(), h, g, a.data(), d.data());
        out.details.push_back(std::move(d));
        cur = std::move(a);
    }
    out.approx = std::move(cur);
    return out;
}

std::vector<double> dwt1_inverse(const Dwt1Pyramid& pyramid, const WaveletFilter& filter) {
    if (pyramid.level_count() == 0 || pyramid.input_lengths.size() != pyramid.level_count())
        throw ShapeMismatch("dwt1_inverse: inconsistent pyramid");

    const std::vector<double> h = filter.lowpass;
    const std::vector<double> g = filter.highpass();

    std::vector<double> cur = pyramid.approx;
    for (std::size_t level = pyramid.level_count(); level-- > 0;) {
        const std::vector<double>& d = pyramid.details[level];
        if (d.size() != cur.size())
            throw ShapeMismatch("dwt1_inverse: subband length mismatch at level " +
                                std::to_string(level + 1));
        std::vector<double> x(2 * cur.size());
        synthesize_periodic(cur.data(), d.data(), x.size(), h, g, x.data());
        x.resize(pyramid.input_lengths[level]); // crop the replicate pad
        cur = std::move(x);
    }
    return cur;
}

Dwt2Coeffs dwt2_forward(const Eigen::MatrixXd& x, const WaveletFilter& filter,
                        std::size_t levels) {
    const auto rows = static_cast<std::size_t>(x.rows());
    const auto cols = static_cast<std::size_t>(x.cols());
    if (rows < 2 || cols < 1)
        throw MatrixTooSmall("dwt2_forward: need at least 2 rows and 1 column");
    if (levels < 1 || levels > max_dwt2_levels(rows, cols))
        throw InvalidLevels("dwt2_forward: levels must be in [1, " +
                            std::to_string(max_dwt2_levels(rows, cols)) + "] for " +
                            std::to_string(rows) + "x" + std::to_string(cols));

    const std::vector<double> h = filter.lowpass;
    const std::vector<double> g = filter.highpass();

    Dwt2Coeffs out;
    Eigen::MatrixXd cur = x;
    for (std::size_t level = 0; level < levels; ++level) {
        Dwt2Level lev;
        lev.in_rows = static_cast<std::size_t>(cur.rows());
        lev.in_cols = static_cast<std::size_t>(cur.cols());
        const bool single_col = lev.in_cols == 1;
        cur = pad_matrix(cur, lev.in_rows % 2 == 1, !single_col && lev.in_cols % 2 == 1);
        const std::size_t pr = static_cast<std::size_t>(cur.rows());
        const std::size_t pc = static_cast<std::size_t>(cur.cols());

        // rows pass: each row -> [L | H]
        if (!single_col) {
            Eigen::MatrixXd t(pr, pc);
            for (std::size_t r = 0; r < pr; ++r) {
                analyze_periodic(cur.data() + r, pc, h, g, t.data() + r,
                                 t.data() + r + (pc / 2) * pr, pr);
            }
            cur = std::move(t);
        }
        // columns pass: each column -> [top; bottom]
        {
            Eigen::MatrixXd t(pr, static_cast<std::size_t>(cur.cols()));
            for (std::size_t c = 0; c < static_cast<std::size_t>(cur.cols()); ++c) {
                analyze_periodic(cur.col(c).data(), pr, h, g, t.col(c).data(),
                                 t.col(c).data() + pr / 2);
            }
            cur = std::move(t);
        }

        const std::size_t hr = pr / 2;
        if (single_col) {
            lev.hl = cur.bottomRows(hr);
            cur = Eigen::MatrixXd(cur.topRows(hr));
        } else {
            const std::size_t hc = pc / 2;
            lev.lh = cur.topRightCorner(hr, hc);
            lev.hl = cur.bottomLeftCorner(hr, hc);
            lev.hh = cur.bottomRightCorner(hr, hc);
            cur = Eigen::MatrixXd(cur.topLeftCorner(hr, hc));
        }
        out.levels.push_back(std::move(lev));
    }
    out.ll = std::move(cur);
    return out;
}

Eigen::MatrixXd dwt2_inverse(const Dwt2Coeffs& coeffs, const WaveletFilter& filter) {
    if (coeffs.level_count() == 0) throw ShapeMismatch("dwt2_inverse: no levels");

    const std::vector<double> h = filter.lowpass;
    const std::vector<double> g = filter.highpass();

    Eigen::MatrixXd cur = coeffs.ll;
    for (std::size_t level = coeffs.level_count(); level-- > 0;) {
        const Dwt2Level& lev = coeffs.levels[level];
        const bool single_col = lev.in_cols == 1;
        const std::size_t pr = lev.in_rows + lev.in_rows % 2;
        const std::size_t pc = single_col ? 1 : lev.in_cols + lev.in_cols % 2;
        const std::size_t hr = pr / 2;
        const std::size_t hc = single_col ? 1 : pc / 2;

        auto expect = [&](const Eigen::MatrixXd& m, std::size_t r, std::size_t c,
                          const char* what) {
            if (static_cast<std::size_t>(m.rows()) != r ||
                static_cast<std::size_t>(m.cols()) != c)
                throw ShapeMismatch(std::string("dwt2_inverse: ") + what +
                                    " shape mismatch at level " + std::to_string(level + 1));
        };
        expect(cur, hr, hc, "approx");
        expect(lev.hl, hr, hc, "hl");
        if (!single_col) {
            expect(lev.lh, hr, hc, "lh");
            expect(lev.hh, hr, hc, "hh");
        } else {
            if (lev.lh.size() != 0 || lev.hh.size() != 0)
                throw ShapeMismatch("dwt2_inverse: single-column level carries lh/hh");
        }

        // undo the columns pass
        Eigen::MatrixXd assembled(pr, pc);
        if (single_col) {
            Eigen::MatrixXd stacked(pr, 1);
            stacked.topRows(hr) = cur;
            stacked.bottomRows(hr) = lev.hl;
            synthesize_periodic(stacked.data(), stacked.data() + hr, pr, h, g,
                                assembled.data());
        } else {
            Eigen::MatrixXd stacked(pr, pc);
            stacked.topLeftCorner(hr, hc) = cur;
            stacked.topRightCorner(hr, hc) = lev.lh;
            stacked.bottomLeftCorner(hr, hc) = lev.hl;
            stacked.bottomRightCorner(hr, hc) = lev.hh;
            for (std::size_t c = 0; c < pc; ++c) {
                synthesize_periodic(stacked.col(c).data(), stacked.col(c).data() + hr, pr, h,
                                    g, assembled.col(c).data());
            }
            // undo the rows pass
            Eigen::MatrixXd t(pr, pc);
            for (std::size_t r = 0; r < pr; ++r) {
                synthesize_periodic(assembled.data() + r, assembled.data() + r + hc * pr, pc,
                                    h, g, t.data() + r, pr);
            }
            assembled = std::move(t);
        }
        cur = assembled.topLeftCorner(lev.in_rows, lev.in_cols);
    }
    return cur;
}

std::size_t Dwt2Coeffs::total_coeff_count() const {
    std::size_t count = static_cast<std::size_t>(ll.size());
    for (const Dwt2Level& lev : levels) {
        count += static_cast<std::size_t>(lev.lh.size() + lev.hl.size() + lev.hh.size());
    }
    return count;
}

namespace {

std::size_t count_nonzero(const Eigen::MatrixXd& m) {
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (m.data()[i] != 0.0) ++count;
    }
    return count;
}

} // namespace

std::pair<Dwt2Coeffs, std::size_t> hard_threshold(const Dwt2Coeffs& coeffs, double lambda) {
    if (lambda < 0.0) throw InvalidParameter("hard_threshold: lambda must be >= 0");
    Dwt2Coeffs out = coeffs;
    auto shrink = [lambda](Eigen::MatrixXd& m) {
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            if (!(std::abs(m.data()[i]) >= lambda)) m.data()[i] = 0.0;
        }
    };
    std::size_t retained = count_nonzero(out.ll);
    for (Dwt2Level& lev : out.levels) {
        shrink(lev.lh);
        shrink(lev.hl);
        shrink(lev.hh);
        retained += count_nonzero(lev.lh) + count_nonzero(lev.hl) + count_nonzero(lev.hh);
    }
    return {std::move(out), retained};
}

Dwt2Coeffs soft_threshold(const Dwt2Coeffs& coeffs, double lambda) {
    if (lambda < 0.0) throw InvalidParameter("soft_threshold: lambda must be >= 0");
    Dwt2Coeffs out = coeffs;
    auto shrink = [lambda](Eigen::MatrixXd& m) {
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            const double t = m.data()[i];
            const double mag = std::abs(t) - lambda;
            m.data()[i] = mag > 0.0 ? (t > 0.0 ? mag : -mag) : 0.0;
        }
    };
    for (Dwt2Level& lev : out.levels) {
        shrink(lev.lh);
        shrink(lev.hl);
        shrink(lev.hh);
    }
    return out;
}

} // namespace nlwt
