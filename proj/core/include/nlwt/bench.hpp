#ifndef NLWT_BENCH_HPP
#define NLWT_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlwt/params.hpp"
#include "nlwt/record_io.hpp"
#include "nlwt/signal.hpp"

namespace nlwt {

enum class Method { nlm, nlwt };
const char* to_string(Method method);
Method method_from_string(const std::string& s);

enum class ReportFormat { csv, json };

/// One result row. kind == average rows aggregate every run of one
/// (method, snr) pair; their record/channel are "all", realization is -1
/// and n carries the number of runs averaged.
struct DenoiseReport {
    enum class Kind { run, average };
    Kind kind = Kind::run;
    std::string record;
    std::string channel;
    Method method = Method::nlwt;
    double snr_in_db = 0.0;
    int realization = 0;
    std::uint64_t seed = 0;
    std::optional<double> snr_imp_db; // nullopt: perfect reconstruction
    double mse = 0.0;
    double prd_percent = 0.0;
    double clean_power = 0.0; // mean power of the clean signal, for PRD checks
    double runtime_ms = 0.0;  // 0 unless the plan enables wall timing
    std::size_t n = 1;        // runs averaged (average rows)
    std::string sigma_source; // "known" or "estimated"
    NlwtParams nlwt_params;
    NlmParams nlm_params;
};

/// The experimental protocol: per (record, channel, snr, realization),
/// normalize, inject calibrated noise with a derived seed, denoise with
/// each method against the same noisy realization, score. Emits one row
/// per run plus one average row per (method, snr).
struct BenchmarkPlan {
    std::vector<RecordFile> records;
    std::vector<Method> methods = {Method::nlm, Method::nlwt};
    std::vector<double> snr_db = {6.0, 10.0, 15.0, 20.0};
    std::uint32_t realizations = 5;
    std::uint64_t base_seed = 0;
    NlwtParams nlwt_params;
    NlmParams nlm_params;        // mu == 0 derives mu = mu_factor * sigma per cell
    double nlm_mu_factor = 1.5;
    bool estimate_noise = false; // feed denoisers estimate_sigma instead of the true sigma
    bool wall_timing = false;    // fills runtime_ms; breaks byte-for-byte reproducibility
    int workers = 1;

    void validate() const;
};

/// Default desk-scale plan over a 30-beat synthetic ECG at 360 Hz.
BenchmarkPlan default_plan();

/// Noise seed for one benchmark cell: FNV-1a over
/// "record|channel|snr(%.9g)|realization", mixed with splitmix64(base).
/// Changing only the realization index changes only this seed.
std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& record,
                          const std::string& channel, double snr_db,
                          std::uint32_t realization);

/// Deterministic given the plan; rows sorted by (record, channel, snr,
/// realization, method), average rows after, sorted by (method, snr).
std::vector<DenoiseReport> run_benchmark(const BenchmarkPlan& plan);

void write_report(const std::vector<DenoiseReport>& reports, ReportFormat format,
                  std::ostream& out);
void write_report(const std::vector<DenoiseReport>& reports, ReportFormat format,
                  const std::string& path);

} // namespace nlwt

#endif
