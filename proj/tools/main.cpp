// Command line front end: synthesize test records, inject calibrated
// noise, denoise CSV records, and run the reproducible benchmark harness.
//
// Exit codes: 0 success, 1 runtime/data error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlwt/bench.hpp"
#include "nlwt/metrics.hpp"
#include "nlwt/nlm.hpp"
#include "nlwt/noise.hpp"
#include "nlwt/pipeline.hpp"

namespace {

using nlohmann::json;

struct ParamFlags {
    CLI::App* cmd = nullptr;
    std::size_t L = 10, M = 1000, m = 42, k = 10, n_components = 5, refit_every = 1,
                levels = 0;
    double tau = 1.2, c = 3.8;
    std::string wavelet = "haar", projector = "pca", threshold_rule = "fixed";
    std::size_t nlm_patch = 10, nlm_search = 1000;
    double nlm_mu = 0.0, nlm_mu_factor = 1.5;
    std::string config_path;

    void add_to(CLI::App* app) {
        cmd = app;
        app->add_option("--L", L, "block half-width in samples (0.01*fs .. 0.1*fs)");
        app->add_option("--M", M, "search window half-width in samples");
        app->add_option("--m", m, "max blocks per SDM");
        app->add_option("--tau", tau, "matching threshold");
        app->add_option("--k", k, "reference shift, 0 < k < 2L+1");
        app->add_option("--c", c, "shrinkage threshold multiplier");
        app->add_option("--wavelet", wavelet, "haar, db2, db4 or sym4");
        app->add_option("--projector", projector, "pca or dct");
        app->add_option("--n-components", n_components, "feature dimensions kept");
        app->add_option("--threshold-rule", threshold_rule, "fixed or visu");
        app->add_option("--refit-every", refit_every, "references sharing one projector");
        app->add_option("--levels", levels, "2-D DWT depth (0 = automatic)");
        app->add_option("--nlm-patch", nlm_patch, "nlm patch half-width");
        app->add_option("--nlm-search", nlm_search, "nlm search half-width");
        app->add_option("--nlm-mu", nlm_mu, "nlm bandwidth (absolute)");
        app->add_option("--nlm-mu-factor", nlm_mu_factor,
                        "nlm bandwidth as a multiple of sigma (default 1.5)");
        app->add_option("--config", config_path,
                        "JSON parameter file (keys L, M, m, tau, k, c, wavelet, ...)");
    }

    bool given(const std::string& name) const { return cmd->count(name) > 0; }

    // defaults(fs) < config file < flags
    void resolve(double fs_hz, nlwt::NlwtParams& p, nlwt::NlmParams& nlm,
                 double& mu_factor) const {
        p = fs_hz > 0.0 ? nlwt::NlwtParams::for_sample_rate(fs_hz) : nlwt::NlwtParams{};
        nlm = nlwt::NlmParams{};
        mu_factor = 1.5;

        json cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw nlwt::IoError("cannot open config \"" + config_path + "\"");
            in >> cfg;
        }
        auto pick_sz = [&](const char* flag, const char* key, std::size_t flag_val,
                           std::size_t current) {
            if (given(flag)) return flag_val;
            if (cfg.contains(key)) return cfg.at(key).get<std::size_t>();
            return current;
        };
        auto pick_d = [&](const char* flag, const char* key, double flag_val,
                          double current) {
            if (given(flag)) return flag_val;
            if (cfg.contains(key)) return cfg.at(key).get<double>();
            return current;
        };
        auto pick_s = [&](const char* flag, const char* key, const std::string& flag_val,
                          const std::string& current) {
            if (given(flag)) return flag_val;
            if (cfg.contains(key)) return cfg.at(key).get<std::string>();
            return current;
        };

        p.L = pick_sz("--L", "L", L, p.L);
        const bool k_set = given("--k") || cfg.contains("k");
        const bool m_set = given("--m") || cfg.contains("m");
        p.M = pick_sz("--M", "M", M, p.M);
        p.m = pick_sz("--m", "m", m, p.m);
        p.tau = pick_d("--tau", "tau", tau, p.tau);
        p.k = pick_sz("--k", "k", k, p.k);
        p.c = pick_d("--c", "c", c, p.c);
        p.wavelet = nlwt::WaveletFilter::from_name(
                        pick_s("--wavelet", "wavelet", wavelet, "haar"))
                        .name;
        p.projector = nlwt::projector_from_string(
            pick_s("--projector", "projector", projector, "pca"));
        p.n_components = pick_sz("--n-components", "n_components", n_components,
                                 p.n_components);
        p.threshold_rule = nlwt::threshold_rule_from_string(
            pick_s("--threshold-rule", "threshold_rule", threshold_rule, "fixed"));
        p.refit_every = pick_sz("--refit-every", "refit_every", refit_every, p.refit_every);
        p.levels = pick_sz("--levels", "levels", levels, p.levels);
        // k = L and m = 2(2L+1) track an overridden L unless set themselves
        if (!k_set && (given("--L") || cfg.contains("L"))) p.k = p.L;
        if (!m_set && (given("--L") || cfg.contains("L"))) p.m = 2 * (2 * p.L + 1);

        nlm.patch_half_width = pick_sz("--nlm-patch", "nlm_patch", nlm_patch,
                                       nlm.patch_half_width);
        nlm.search_half_width = pick_sz("--nlm-search", "nlm_search", nlm_search,
                                        nlm.search_half_width);
        nlm.mu = pick_d("--nlm-mu", "nlm_mu", nlm_mu, nlm.mu);
        mu_factor = pick_d("--nlm-mu-factor", "nlm_mu_factor", nlm_mu_factor, mu_factor);

        p.validate();
    }
};

json params_summary(const nlwt::NlwtParams& p, const nlwt::NlmParams& nlm,
                    double mu_factor) {
    return {
        {"L", p.L},
        {"M", p.M},
        {"m", p.m},
        {"tau", p.tau},
        {"k", p.k},
        {"c", p.c},
        {"wavelet", nlwt::WaveletFilter::from_name(p.wavelet).name_str()},
        {"projector", nlwt::to_string(p.projector)},
        {"n_components", p.n_components},
        {"threshold_rule", nlwt::to_string(p.threshold_rule)},
        {"refit_every", p.refit_every},
        {"levels", p.levels},
        {"nlm_patch", nlm.patch_half_width},
        {"nlm_search", nlm.search_half_width},
        {"nlm_mu", nlm.mu},
        {"nlm_mu_factor", mu_factor},
    };
}

struct SynthArgs {
    std::uint32_t beats = 30;
    double fs = 360.0, bpm = 60.0, jitter = 0.02;
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_synth(const SynthArgs& args) {
    const nlwt::Signal ecg = nlwt::synth_ecg(args.beats, args.fs, args.bpm, args.seed,
                                             args.jitter);
    nlwt::write_csv(nlwt::record_from_signal(ecg, "ecg"), args.output);
    json summary = {{"command", "synth"},  {"output", args.output}, {"beats", args.beats},
                    {"fs", args.fs},       {"bpm", args.bpm},       {"seed", args.seed},
                    {"jitter", args.jitter}, {"samples", ecg.size()}};
    std::cout << summary.dump() << "\n";
    return 0;
}

struct AddNoiseArgs {
    std::string input, output;
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    double fs_override = 0.0;
};

int cmd_add_noise(const AddNoiseArgs& args) {
    nlwt::RecordFile record = nlwt::read_csv(args.input, args.fs_override);
    json sigmas = json::object();
    for (std::size_t c = 0; c < record.channel_count(); ++c) {
        const std::uint64_t seed = nlwt::derive_seed(args.seed, record.source_path,
                                                     record.channel_names[c], args.snr_db, 0);
        auto [noisy, sigma] = nlwt::add_awgn(record.channel(c), nlwt::NoiseSpec{args.snr_db, seed});
        record.channels[c] = noisy.samples;
        sigmas[record.channel_names[c]] = sigma;
    }
    nlwt::write_csv(record, args.output);
    json summary = {{"command", "add-noise"}, {"input", args.input},
                    {"output", args.output},  {"snr_db", args.snr_db},
                    {"seed", args.seed},      {"sigma", sigmas}};
    std::cout << summary.dump() << "\n";
    return 0;
}

struct DenoiseArgs {
    std::string input, output, method = "nlwt";
    std::optional<double> sigma;
    bool estimate = false;
    bool do_normalize = false;
    double fs_override = 0.0;
    int workers = 1;
};

int cmd_denoise(const DenoiseArgs& args, const ParamFlags& flags) {
    const nlwt::Method method = nlwt::method_from_string(args.method);
    const nlwt::RecordFile record = nlwt::read_csv(args.input, args.fs_override);

    nlwt::NlwtParams params;
    nlwt::NlmParams nlm_params;
    double mu_factor = 1.5;
    flags.resolve(record.sample_rate_hz, params, nlm_params, mu_factor);

    if (!args.sigma && !args.estimate &&
        !(method == nlwt::Method::nlm && nlm_params.mu > 0.0))
        throw nlwt::InvalidParameter(
            "need --sigma or --estimate-sigma (or --nlm-mu for method nlm)");

    nlwt::RecordFile out = record;
    json sigmas = json::object();
    for (std::size_t c = 0; c < record.channel_count(); ++c) {
        nlwt::Signal channel = record.channel(c);
        if (args.do_normalize) channel = nlwt::normalize(channel);
        double sigma = args.sigma.value_or(0.0);
        if (args.estimate)
            sigma = nlwt::estimate_sigma(channel,
                                         nlwt::WaveletFilter::from_name(params.wavelet));
        sigmas[record.channel_names[c]] = sigma;

        nlwt::Signal denoised;
        if (method == nlwt::Method::nlm) {
            nlwt::NlmParams per_channel = nlm_params;
            if (per_channel.mu <= 0.0)
                per_channel.mu = nlwt::NlmParams::bandwidth_from_sigma(sigma, mu_factor);
            denoised = nlwt::denoise_nlm(channel, per_channel, args.workers);
        } else {
            denoised = nlwt::denoise_nlwt(channel, sigma, params, args.workers);
        }
        out.channels[c] = denoised.samples;
    }
    nlwt::write_csv(out, args.output);

    json summary = {{"command", "denoise"},
                    {"input", args.input},
                    {"output", args.output},
                    {"method", args.method},
                    {"sigma", sigmas},
                    {"sigma_source", args.estimate ? "estimated" : "known"},
                    {"normalize", args.do_normalize},
                    {"workers", args.workers},
                    {"samples", record.length()},
                    {"params", params_summary(params, nlm_params, mu_factor)}};
    std::cout << summary.dump() << "\n";
    return 0;
}

struct BenchArgs {
    std::vector<std::string> records;
    std::vector<std::string> methods = {"nlm", "nlwt"};
    std::vector<double> snrs = {6.0, 10.0, 15.0, 20.0};
    std::uint32_t realizations = 5;
    std::uint64_t seed = 0;
    bool estimate = false;
    std::string output, format = "json", timing = "none", plan_path;
    double fs_override = 0.0;
    int workers = 1;
};

int cmd_benchmark(const BenchArgs& args, const ParamFlags& flags, CLI::App* cmd) {
    json plan_json = json::object();
    if (!args.plan_path.empty()) {
        std::ifstream in(args.plan_path);
        if (!in) throw nlwt::IoError("cannot open plan \"" + args.plan_path + "\"");
        in >> plan_json;
    }
    auto plan_or = [&](const char* flag, const char* key, auto value) {
        using T = decltype(value);
        if (cmd->count(flag) > 0) return value;
        if (plan_json.contains(key)) return plan_json.at(key).get<T>();
        return value;
    };

    nlwt::BenchmarkPlan plan;
    const std::vector<std::string> record_paths =
        plan_or("--records", "records", args.records);
    for (const std::string& path : record_paths)
        plan.records.push_back(nlwt::read_csv(path, args.fs_override));
    if (plan.records.empty()) plan = nlwt::default_plan(); // 30-beat synthetic ECG

    const std::vector<std::string> method_names =
        plan_or("--methods", "methods", args.methods);
    plan.methods.clear();
    for (const std::string& name : method_names)
        plan.methods.push_back(nlwt::method_from_string(name));
    plan.snr_db = plan_or("--snrs", "snr_db", args.snrs);
    plan.realizations = plan_or("--realizations", "realizations", args.realizations);
    plan.base_seed = plan_or("--seed", "base_seed", args.seed);
    plan.estimate_noise = args.estimate || plan_json.value("estimate_sigma", false);
    plan.wall_timing = args.timing == "wall";
    plan.workers = args.workers;

    const double fs = plan.records.front().sample_rate_hz;
    flags.resolve(fs, plan.nlwt_params, plan.nlm_params, plan.nlm_mu_factor);
    if (plan_json.contains("params") && flags.config_path.empty()) {
        // plan-embedded parameter overrides reuse the config-file layer
        for (auto& [key, value] : plan_json.at("params").items()) {
            if (key == "L") plan.nlwt_params.L = value.get<std::size_t>();
            else if (key == "M") plan.nlwt_params.M = value.get<std::size_t>();
            else if (key == "m") plan.nlwt_params.m = value.get<std::size_t>();
            else if (key == "tau") plan.nlwt_params.tau = value.get<double>();
            else if (key == "k") plan.nlwt_params.k = value.get<std::size_t>();
            else if (key == "c") plan.nlwt_params.c = value.get<double>();
            else if (key == "wavelet")
                plan.nlwt_params.wavelet =
                    nlwt::WaveletFilter::from_name(value.get<std::string>()).name;
            else if (key == "projector")
                plan.nlwt_params.projector = nlwt::projector_from_string(value);
            else if (key == "n_components")
                plan.nlwt_params.n_components = value.get<std::size_t>();
            else if (key == "levels") plan.nlwt_params.levels = value.get<std::size_t>();
            else throw nlwt::InvalidParameter("unknown plan parameter \"" + key + "\"");
        }
        plan.nlwt_params.validate();
    }

    const std::vector<nlwt::DenoiseReport> rows = nlwt::run_benchmark(plan);
    const nlwt::ReportFormat format =
        args.format == "csv" ? nlwt::ReportFormat::csv : nlwt::ReportFormat::json;
    if (args.output.empty()) {
        nlwt::write_report(rows, format, std::cout);
    } else {
        nlwt::write_report(rows, format, args.output);
        json summary = {{"command", "benchmark"},
                        {"output", args.output},
                        {"rows", rows.size()},
                        {"realizations", plan.realizations},
                        {"seed", plan.base_seed},
                        {"workers", plan.workers},
                        {"timing", args.timing},
                        {"params", params_summary(plan.nlwt_params, plan.nlm_params,
                                                  plan.nlm_mu_factor)}};
        std::cout << summary.dump() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-matching wavelet denoiser for quasi-periodic 1-D records"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "write a synthetic ECG-like CSV record");
    synth->add_option("--beats", synth_args.beats, "number of beats");
    synth->add_option("--fs", synth_args.fs, "sample rate in Hz");
    synth->add_option("--bpm", synth_args.bpm, "heart rate");
    synth->add_option("--seed", synth_args.seed, "jitter seed");
    synth->add_option("--jitter", synth_args.jitter, "beat period jitter fraction, <= 0.02");
    synth->add_option("--output,-o", synth_args.output, "output CSV path")->required();

    AddNoiseArgs noise_args;
    CLI::App* add_noise =
        app.add_subcommand("add-noise", "inject calibrated white Gaussian noise");
    add_noise->add_option("--input,-i", noise_args.input, "clean CSV record")->required();
    add_noise->add_option("--output,-o", noise_args.output, "noisy CSV path")->required();
    add_noise->add_option("--snr", noise_args.snr_db, "target SNR in dB")->required();
    add_noise->add_option("--seed", noise_args.seed, "noise seed");
    add_noise->add_option("--fs-override", noise_args.fs_override,
                          "sample rate when the file lacks a # fs= comment");

    DenoiseArgs denoise_args;
    ParamFlags denoise_flags;
    CLI::App* denoise = app.add_subcommand("denoise", "denoise a CSV record");
    denoise->add_option("--input,-i", denoise_args.input, "noisy CSV record")->required();
    denoise->add_option("--output,-o", denoise_args.output, "denoised CSV path")->required();
    denoise->add_option("--method", denoise_args.method, "nlwt or nlm");
    double sigma_flag = 0.0;
    CLI::Option* sigma_opt =
        denoise->add_option("--sigma", sigma_flag, "noise standard deviation");
    denoise->add_flag("--estimate-sigma", denoise_args.estimate,
                      "estimate sigma from the finest detail coefficients");
    denoise->add_flag("--normalize", denoise_args.do_normalize,
                      "normalize to unit peak before denoising");
    denoise->add_option("--fs-override", denoise_args.fs_override,
                        "sample rate when the file lacks a # fs= comment");
    denoise->add_option("--workers", denoise_args.workers, "worker threads");
    denoise_flags.add_to(denoise);

    BenchArgs bench_args;
    ParamFlags bench_flags;
    CLI::App* bench = app.add_subcommand("benchmark", "run the reproducible benchmark");
    bench->add_option("--records", bench_args.records, "CSV records (default: synthetic)")
        ->delimiter(',');
    bench->add_option("--methods", bench_args.methods, "methods to compare")->delimiter(',');
    bench->add_option("--snrs", bench_args.snrs, "input SNR levels in dB")->delimiter(',');
    bench->add_option("--realizations", bench_args.realizations, "noise realizations");
    bench->add_option("--seed", bench_args.seed, "base seed");
    bench->add_flag("--estimate-sigma", bench_args.estimate,
                    "denoise with estimated instead of true sigma");
    bench->add_option("--plan", bench_args.plan_path, "JSON plan file");
    bench->add_option("--output,-o", bench_args.output, "report path (default: stdout)");
    bench->add_option("--format", bench_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--timing", bench_args.timing,
                      "none (reproducible) or wall (fills runtime_ms)")
        ->check(CLI::IsMember({"none", "wall"}));
    bench->add_option("--fs-override", bench_args.fs_override,
                      "sample rate for records lacking a # fs= comment");
    bench->add_option("--workers", bench_args.workers, "worker threads");
    bench_flags.add_to(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(synth)) return cmd_synth(synth_args);
        if (app.got_subcommand(add_noise)) return cmd_add_noise(noise_args);
        if (app.got_subcommand(denoise)) {
            if (sigma_opt->count() > 0) denoise_args.sigma = sigma_flag;
            return cmd_denoise(denoise_args, denoise_flags);
        }
        if (app.got_subcommand(bench)) return cmd_benchmark(bench_args, bench_flags, bench);
    } catch (const nlwt::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlwt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
