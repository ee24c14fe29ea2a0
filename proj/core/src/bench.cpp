#include "nlwt/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlwt/metrics.hpp"
#include "nlwt/nlm.hpp"
#include "nlwt/noise.hpp"
#include "nlwt/parallel.hpp"
#include "nlwt/pipeline.hpp"

namespace nlwt {

const char* to_string(Method method) { return method == Method::nlm ? "nlm" : "nlwt"; }

Method method_from_string(const std::string& s) {
    if (s == "nlm") return Method::nlm;
    if (s == "nlwt") return Method::nlwt;
    throw InvalidParameter("unknown method \"" + s + "\" (nlm, nlwt)");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_g(double v, int digits = 12) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

nlohmann::json params_to_json(const NlwtParams& p) {
    return {
        {"L", p.L},
        {"M", p.M},
        {"m", p.m},
        {"tau", p.tau},
        {"k", p.k},
        {"c", p.c},
        {"wavelet", WaveletFilter::from_name(p.wavelet).name_str()},
        {"projector", to_string(p.projector)},
        {"n_components", p.n_components},
        {"threshold_rule", to_string(p.threshold_rule)},
        {"refit_every", p.refit_every},
        {"levels", p.levels},
    };
}

nlohmann::json params_to_json(const NlmParams& p) {
    return {
        {"patch_half_width", p.patch_half_width},
        {"search_half_width", p.search_half_width},
        {"mu", p.mu},
        {"exclude_center", p.exclude_center},
    };
}

nlohmann::json row_to_json(const DenoiseReport& row) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kind"] = row.kind == DenoiseReport::Kind::run ? "run" : "average";
    j["record"] = row.record;
    j["channel"] = row.channel;
    j["method"] = to_string(row.method);
    j["snr_in_db"] = row.snr_in_db;
    j["realization"] = row.realization;
    j["seed"] = row.seed;
    if (row.snr_imp_db) {
        j["snr_imp_db"] = *row.snr_imp_db;
    } else {
        j["snr_imp_db"] = nullptr;
        j["perfect"] = true;
    }
    j["mse"] = row.mse;
    j["prd_percent"] = row.prd_percent;
    j["clean_power"] = row.clean_power;
    j["runtime_ms"] = row.runtime_ms;
    j["n"] = row.n;
    nlohmann::json params = row.method == Method::nlm ? params_to_json(row.nlm_params)
                                                      : params_to_json(row.nlwt_params);
    params["sigma_source"] = row.sigma_source;
    j["params"] = params;
    return j;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        out += ch;
    }
    out += "\"";
    return out;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& record,
                          const std::string& channel, double snr_db,
                          std::uint32_t realization) {
    char snr_buf[32];
    std::snprintf(snr_buf, sizeof(snr_buf), "%.9g", snr_db);
    const std::string key =
        record + "|" + channel + "|" + snr_buf + "|" + std::to_string(realization);
    return splitmix64(splitmix64(base_seed) ^ fnv1a64(key));
}

void BenchmarkPlan::validate() const {
    if (records.empty()) throw InvalidParameter("benchmark plan: no records");
    if (methods.empty()) throw InvalidParameter("benchmark plan: no methods");
    if (snr_db.empty()) throw InvalidParameter("benchmark plan: snr list is empty");
    if (realizations < 1) throw InvalidParameter("benchmark plan: realizations must be >= 1");
    nlwt_params.validate();
    if (nlm_params.mu <= 0.0 && !(nlm_mu_factor > 0.0))
        throw InvalidParameter("benchmark plan: nlm mu or mu factor must be positive");
}

BenchmarkPlan default_plan() {
    BenchmarkPlan plan;
    Signal ecg = synth_ecg(30, 360.0, 60.0, 1);
    RecordFile record = record_from_signal(ecg, "ecg");
    record.source_path = "synth_ecg";
    plan.records.push_back(std::move(record));
    return plan;
}

std::vector<DenoiseReport> run_benchmark(const BenchmarkPlan& plan) {
    plan.validate();

    struct Cell {
        std::size_t record;
        std::size_t channel;
        std::size_t snr;
        std::uint32_t realization;
    };
    std::vector<Cell> cells;
    for (std::size_t r = 0; r < plan.records.size(); ++r)
        for (std::size_t ch = 0; ch < plan.records[r].channel_count(); ++ch)
            for (std::size_t s = 0; s < plan.snr_db.size(); ++s)
                for (std::uint32_t t = 0; t < plan.realizations; ++t)
                    cells.push_back({r, ch, s, t});

    const std::size_t n_methods = plan.methods.size();
    std::vector<DenoiseReport> rows(cells.size() * n_methods);

    parallel_for(0, cells.size(), plan.workers, [&](std::size_t idx) {
        const Cell& cell = cells[idx];
        const RecordFile& record = plan.records[cell.record];
        const double snr_db = plan.snr_db[cell.snr];
        const std::string& record_id = record.source_path;
        const std::string& channel_id = record.channel_names[cell.channel];

        const Signal clean = normalize(record.channel(cell.channel));
        const std::uint64_t seed =
            derive_seed(plan.base_seed, record_id, channel_id, snr_db, cell.realization);
        auto [noisy, sigma_true] = add_awgn(clean, NoiseSpec{snr_db, seed});

        double sigma = sigma_true;
        std::string sigma_source = "known";
        if (plan.estimate_noise) {
            sigma = estimate_sigma(noisy, WaveletFilter::from_name(plan.nlwt_params.wavelet));
            sigma_source = "estimated";
        }

        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            const Method method = plan.methods[mi];
            DenoiseReport row;
            row.kind = DenoiseReport::Kind::run;
            row.record = record_id;
            row.channel = channel_id;
            row.method = method;
            row.snr_in_db = snr_db;
            row.realization = static_cast<int>(cell.realization);
            row.seed = seed;
            row.clean_power = mean_power(clean.samples);
            row.sigma_source = sigma_source;
            row.nlwt_params = plan.nlwt_params;
            row.nlm_params = plan.nlm_params;
            if (row.nlm_params.mu <= 0.0)
                row.nlm_params.mu = NlmParams::bandwidth_from_sigma(sigma, plan.nlm_mu_factor);

            const auto start = std::chrono::steady_clock::now();
            const Signal denoised = method == Method::nlm
                                        ? denoise_nlm(noisy, row.nlm_params)
                                        : denoise_nlwt(noisy, sigma, row.nlwt_params);
            if (plan.wall_timing) {
                const auto stop = std::chrono::steady_clock::now();
                row.runtime_ms =
                    std::chrono::duration<double, std::milli>(stop - start).count();
            }

            row.snr_imp_db = snr_improvement(clean, noisy, denoised);
            row.mse = mse(clean, denoised);
            row.prd_percent = prd(clean, denoised);
            rows[idx * n_methods + mi] = std::move(row);
        }
    });

    // per-(method, snr) averages over records, channels and realizations
    std::vector<DenoiseReport> averages;
    for (const Method method : plan.methods) {
        for (const double snr_db : plan.snr_db) {
            DenoiseReport avg;
            avg.kind = DenoiseReport::Kind::average;
            avg.record = "all";
            avg.channel = "all";
            avg.method = method;
            avg.snr_in_db = snr_db;
            avg.realization = -1;
            avg.seed = 0;
            std::size_t count = 0, imp_count = 0;
            double imp_sum = 0.0;
            for (const DenoiseReport& row : rows) {
                if (row.method != method || row.snr_in_db != snr_db) continue;
                ++count;
                if (row.snr_imp_db) {
                    imp_sum += *row.snr_imp_db;
                    ++imp_count;
                }
                avg.mse += row.mse;
                avg.prd_percent += row.prd_percent;
                avg.clean_power += row.clean_power;
                avg.runtime_ms += row.runtime_ms;
                avg.sigma_source = row.sigma_source;
                avg.nlwt_params = row.nlwt_params;
                avg.nlm_params = row.nlm_params;
            }
            avg.n = count;
            if (imp_count > 0) avg.snr_imp_db = imp_sum / static_cast<double>(imp_count);
            if (count > 0) {
                avg.mse /= static_cast<double>(count);
                avg.prd_percent /= static_cast<double>(count);
                avg.clean_power /= static_cast<double>(count);
                avg.runtime_ms /= static_cast<double>(count);
            }
            averages.push_back(std::move(avg));
        }
    }
    rows.insert(rows.end(), averages.begin(), averages.end());
    return rows;
}

void write_report(const std::vector<DenoiseReport>& reports, ReportFormat format,
                  std::ostream& out) {
    if (format == ReportFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const DenoiseReport& row : reports) arr.push_back(row_to_json(row));
        out << arr.dump(2) << "\n";
        return;
    }
    out << "# schema_version=1\n";
    out << "kind,record,channel,method,snr_in_db,realization,seed,snr_imp_db,perfect,"
           "mse,prd_percent,clean_power,runtime_ms,n,sigma_source,params\n";
    for (const DenoiseReport& row : reports) {
        nlohmann::json params = row.method == Method::nlm ? params_to_json(row.nlm_params)
                                                          : params_to_json(row.nlwt_params);
        params["sigma_source"] = row.sigma_source;
        out << (row.kind == DenoiseReport::Kind::run ? "run" : "average") << ","
            << csv_quote(row.record) << "," << csv_quote(row.channel) << ","
            << to_string(row.method) << "," << format_g(row.snr_in_db) << ","
            << row.realization << "," << row.seed << ","
            << (row.snr_imp_db ? format_g(*row.snr_imp_db) : "") << ","
            << (row.snr_imp_db ? "0" : "1") << "," << format_g(row.mse) << ","
            << format_g(row.prd_percent) << "," << format_g(row.clean_power) << ","
            << format_g(row.runtime_ms) << "," << row.n << "," << row.sigma_source << ","
            << csv_quote(params.dump()) << "\n";
    }
}

void write_report(const std::vector<DenoiseReport>& reports, ReportFormat format,
                  const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    write_report(reports, format, out);
    if (!out) throw IoError("failed writing \"" + path + "\"");
}

} // namespace nlwt
