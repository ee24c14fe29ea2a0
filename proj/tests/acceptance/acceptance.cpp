// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Criterion 6 needs user-supplied record exports (NLWT_MITBIH_DIR) and is
// skipped otherwise. Criterion 8 drives the installed CLI via NLWT_CLI.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlwt/bench.hpp"
#include "nlwt/metrics.hpp"
#include "nlwt/nlm.hpp"
#include "nlwt/noise.hpp"
#include "nlwt/parallel.hpp"
#include "nlwt/pipeline.hpp"
#include "../unit/oracles.hpp"

using namespace nlwt;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double elapsed_s(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---- criterion 1: perfect reconstruction over the full shape grid ----
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const WaveletName names[] = {WaveletName::haar, WaveletName::db2, WaveletName::db4,
                                 WaveletName::sym4};
    std::vector<double> worst_per_row(63, 0.0);
    parallel_for(0, 63, 2, [&](std::size_t row) {
        const std::size_t rows = row + 2;
        std::mt19937_64 rng(1000 + rows);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double worst = 0.0;
        for (std::size_t cols = 1; cols <= 64; ++cols) {
            Eigen::MatrixXd x(rows, cols);
            for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = dist(rng);
            for (WaveletName name : names) {
                const WaveletFilter f = WaveletFilter::from_name(name);
                const std::size_t max_lv = max_dwt2_levels(rows, cols);
                for (std::size_t levels = 1; levels <= max_lv; ++levels) {
                    const Eigen::MatrixXd back =
                        dwt2_inverse(dwt2_forward(x, f, levels), f);
                    worst = std::max(worst, (back - x).cwiseAbs().maxCoeff());
                }
            }
        }
        worst_per_row[row] = worst;
    });
    double worst = 0.0;
    for (double w : worst_per_row) worst = std::max(worst, w);
    const double secs = elapsed_s(start);
    report(1, "wavelet round-trip on shapes 2..64 x 1..64, all filters, all levels",
           worst <= 1e-10 && secs < 10.0,
           "max error " + fmt(worst) + ", " + fmt(secs) + " s");
}

// ---- criterion 2: explicit Kronecker-matrix oracle ----
void criterion_2() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const WaveletName names[] = {WaveletName::haar, WaveletName::db2, WaveletName::db4,
                                 WaveletName::sym4};
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t rows = 2 + rng() % 7;
        const std::size_t cols = 1 + rng() % 8;
        const WaveletFilter f = WaveletFilter::from_name(names[rng() % 4]);
        const std::size_t levels = 1 + rng() % max_dwt2_levels(rows, cols);
        Eigen::MatrixXd x(rows, cols);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = dist(rng);

        const Dwt2Coeffs got = dwt2_forward(x, f, levels);
        const Dwt2Coeffs want = oracles::dwt2_forward(x, f, levels);
        worst = std::max(worst, (got.ll - want.ll).cwiseAbs().maxCoeff());
        for (std::size_t l = 0; l < levels; ++l) {
            if (want.levels[l].lh.size())
                worst = std::max(worst,
                                 (got.levels[l].lh - want.levels[l].lh).cwiseAbs().maxCoeff());
            worst = std::max(worst,
                             (got.levels[l].hl - want.levels[l].hl).cwiseAbs().maxCoeff());
            if (want.levels[l].hh.size())
                worst = std::max(worst,
                                 (got.levels[l].hh - want.levels[l].hh).cwiseAbs().maxCoeff());
        }
        worst = std::max(worst, (dwt2_inverse(got, f) - x).cwiseAbs().maxCoeff());
    }
    report(2, "dwt2 matches the explicit-matrix transform oracle, 500 trials",
           worst <= 1e-10, "max deviation " + fmt(worst));
}

// ---- criterion 3: SDM count formula ----
void criterion_3() {
    std::mt19937_64 rng(3);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const std::size_t L = 1 + rng() % 50;
        const std::size_t k = 1 + rng() % (2 * L);
        const std::size_t n = (2 * L + 1) + rng() % 5000;
        const ReferenceSchedule s = reference_schedule(n, L, k);
        const std::size_t expected = 1 + (n - (2 * L + 1)) / k;
        if (s.arithmetic_count() != expected) {
            ok = false;
            detail = "N=" + std::to_string(n) + " L=" + std::to_string(L) +
                     " k=" + std::to_string(k) + ": got " +
                     std::to_string(s.arithmetic_count()) + ", want " +
                     std::to_string(expected);
        }
    }
    report(3, "reference schedule count = 1 + floor((N-(2L+1))/k), 10^4 cases", ok, detail);
}

// ---- criterion 4: identity limit at sigma = 1e-12 ----
void criterion_4() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Signal clean = synth_ecg(10, 360.0, 60.0, seed);
        const Signal out = denoise_nlwt(clean, 1e-12, NlwtParams{}, 2);
        for (std::size_t i = 0; i < clean.size(); ++i)
            worst = std::max(worst, std::abs(out.samples[i] - clean.samples[i]));
    }
    report(4, "denoise_nlwt at sigma 1e-12 returns its input (5 seeds)", worst <= 1e-8,
           "max deviation " + fmt(worst));
}

// ---- criterion 5: denoising floor on the desk-scale benchmark ----
void criterion_5() {
    const auto start = std::chrono::steady_clock::now();
    BenchmarkPlan plan = default_plan();
    plan.workers = 2;
    const std::vector<DenoiseReport> rows = run_benchmark(plan);

    bool ok = true;
    std::string detail;
    for (const DenoiseReport& row : rows) {
        // positivity floor on every individual realization
        if (row.kind == DenoiseReport::Kind::run && row.method == Method::nlwt &&
            !(*row.snr_imp_db > 0.0))
            ok = false;
    }
    for (const double snr : plan.snr_db) {
        double nlwt_mean = 0.0, nlm_mean = 0.0;
        for (const DenoiseReport& row : rows) {
            if (row.kind != DenoiseReport::Kind::average || row.snr_in_db != snr) continue;
            (row.method == Method::nlwt ? nlwt_mean : nlm_mean) = *row.snr_imp_db;
        }
        detail += fmt(snr) + "dB: nlwt " + fmt(nlwt_mean) + " / nlm " + fmt(nlm_mean) + "; ";
        if (!(nlwt_mean > 3.0)) ok = false;
        if (!(nlwt_mean >= nlm_mean)) ok = false;
    }
    const double secs = elapsed_s(start);
    if (secs >= 120.0) ok = false;
    report(5, "mean SNR_imp > 3 dB and nlwt >= nlm at 6/10/15/20 dB", ok,
           detail + fmt(secs) + " s");
}

// ---- criterion 6: optional user-supplied record exports ----
void criterion_6() {
    const char* dir = std::getenv("NLWT_MITBIH_DIR");
    if (dir == nullptr) {
        report(6, "record-export ordering check", true,
               "SKIP: set NLWT_MITBIH_DIR to a directory of <id>.csv exports");
        return;
    }
    const char* ids[] = {"100", "103", "104", "105", "106", "115", "215"};
    bool ok = true;
    std::string detail;
    std::size_t found = 0;
    for (const char* id : ids) {
        const fs::path path = fs::path(dir) / (std::string(id) + ".csv");
        if (!fs::exists(path)) continue;
        ++found;
        RecordFile record = read_csv(path.string(), 360.0);
        // desk scale: the first 30 seconds of the first channel
        const auto keep = static_cast<std::size_t>(30.0 * record.sample_rate_hz);
        if (record.channels[0].size() > keep) record.channels[0].resize(keep);
        record.channels.resize(1);
        record.channel_names.resize(1);
        record.source_path = id;

        BenchmarkPlan plan;
        plan.records.push_back(std::move(record));
        plan.snr_db = {20.0};
        plan.workers = 2;
        const std::vector<DenoiseReport> rows = run_benchmark(plan);
        double nlwt_mean = 0.0, nlm_mean = 0.0;
        for (const DenoiseReport& row : rows) {
            if (row.kind != DenoiseReport::Kind::average) continue;
            (row.method == Method::nlwt ? nlwt_mean : nlm_mean) = *row.snr_imp_db;
        }
        detail += std::string(id) + ": nlwt " + fmt(nlwt_mean) + " / nlm " +
                  fmt(nlm_mean) + "; ";
        if (!(nlwt_mean >= nlm_mean - 1.5)) ok = false;
    }
    if (found == 0) {
        report(6, "record-export ordering check", true,
               std::string("SKIP: no <id>.csv files under ") + dir);
        return;
    }
    report(6, "nlwt >= nlm (within 1.5 dB) at 20 dB on record exports", ok, detail);
}

// ---- criterion 7: metric identities ----
void criterion_7() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        Signal clean, noisy;
        clean.sample_rate_hz = noisy.sample_rate_hz = 1.0;
        clean.samples.resize(n);
        noisy.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            clean.samples[i] = dist(rng);
            noisy.samples[i] = dist(rng);
        }
        if (mean_power(clean.samples) == 0.0) continue;

        if (noisy.samples != clean.samples) {
            const auto imp = snr_improvement(clean, noisy, noisy);
            if (!imp || *imp != 0.0) {
                ok = false;
                detail = "snr_improvement(clean, noisy, noisy) != 0";
            }
        }
        const double m = mse(clean, noisy);
        const double p = prd(clean, noisy);
        const double back = p * p * mean_power(clean.samples) / 1e4;
        if (std::abs(back - m) > 1e-12 * std::max(m, 1e-300)) {
            ok = false;
            detail = "prd/mse identity off by " + fmt(std::abs(back - m));
        }
    }
    report(7, "SNR_imp(denoised=noisy) = 0 exactly; prd^2*P/1e4 = mse, 10^4 cases", ok,
           detail);
}

// ---- criterion 8: CLI determinism across worker counts ----
void criterion_8() {
    const char* cli = std::getenv("NLWT_CLI");
    if (cli == nullptr) {
        report(8, "benchmark byte-determinism across --workers", false,
               "NLWT_CLI is not set");
        return;
    }
    fs::create_directories("acceptance_tmp");
    const std::string r1 = "acceptance_tmp/workers1.json";
    const std::string r8 = "acceptance_tmp/workers8.json";
    const std::string cmd1 = std::string(cli) + " benchmark --workers 1 -o " + r1;
    const std::string cmd8 = std::string(cli) + " benchmark --workers 8 -o " + r8;
    if (std::system(cmd1.c_str()) != 0 || std::system(cmd8.c_str()) != 0) {
        report(8, "benchmark byte-determinism across --workers", false,
               "cli invocation failed");
        return;
    }
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(r1), b = slurp(r8);
    report(8, "default-plan reports byte-identical for --workers 1 vs 8",
           !a.empty() && a == b, std::to_string(a.size()) + " bytes");
}

// ---- criterion 9: NLM convex combination and fixed point ----
void criterion_9() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    NlmParams params;
    params.patch_half_width = 4;
    params.search_half_width = 25;
    params.mu = 0.3;

    bool ok = true;
    std::string detail;
    std::size_t checked = 0;
    for (int block = 0; block < 20 && ok; ++block) {
        Signal v;
        v.sample_rate_hz = 1.0;
        v.samples.resize(600);
        for (double& x : v.samples) x = dist(rng);
        const Signal out = denoise_nlm(v, params);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::size_t lo = i > params.search_half_width ? i - params.search_half_width : 0;
            const std::size_t hi = std::min(v.size() - 1, i + params.search_half_width);
            double wmin = v.samples[lo], wmax = v.samples[lo];
            for (std::size_t j = lo; j <= hi; ++j) {
                wmin = std::min(wmin, v.samples[j]);
                wmax = std::max(wmax, v.samples[j]);
            }
            ++checked;
            if (out.samples[i] < wmin || out.samples[i] > wmax) {
                ok = false;
                detail = "sample " + std::to_string(i) + " outside its window hull";
                break;
            }
        }
    }

    Signal constant;
    constant.sample_rate_hz = 1.0;
    constant.samples.assign(400, 0.37);
    const Signal fixed = denoise_nlm(constant, params);
    if (fixed.samples != constant.samples) {
        ok = false;
        detail = "constant signal is not an exact fixed point";
    }
    report(9, "NLM convex-combination bound (10^4 samples) and exact constant fixed point",
           ok, detail.empty() ? std::to_string(checked) + " samples" : detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
