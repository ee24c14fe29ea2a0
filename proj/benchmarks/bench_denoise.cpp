#include <benchmark/benchmark.h>

#include <random>

#include "nlwt/block_match.hpp"
#include "nlwt/nlm.hpp"
#include "nlwt/noise.hpp"
#include "nlwt/pipeline.hpp"
#include "nlwt/wavelet.hpp"

namespace {

using namespace nlwt;

Eigen::MatrixXd sdm_shaped_matrix() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd m(21, 42);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    return m;
}

Signal noisy_ecg(std::uint32_t beats, double& sigma_out) {
    const Signal clean = synth_ecg(beats, 360.0, 60.0, 1);
    auto [noisy, sigma] = add_awgn(clean, NoiseSpec{10.0, 2});
    sigma_out = sigma;
    return noisy;
}

void BM_GaussianStream(benchmark::State& state) {
    GaussianStream gauss(1);
    for (auto _ : state) benchmark::DoNotOptimize(gauss.next());
}
BENCHMARK(BM_GaussianStream);

void BM_Dwt2Forward(benchmark::State& state) {
    const WaveletFilter f =
        WaveletFilter::from_name(static_cast<WaveletName>(state.range(0)));
    const Eigen::MatrixXd x = sdm_shaped_matrix();
    const std::size_t levels = default_dwt2_levels(21, 42);
    for (auto _ : state) benchmark::DoNotOptimize(dwt2_forward(x, f, levels));
}
BENCHMARK(BM_Dwt2Forward)
    ->Arg(static_cast<int>(WaveletName::haar))
    ->Arg(static_cast<int>(WaveletName::db2))
    ->Arg(static_cast<int>(WaveletName::db4));

void BM_Dwt2RoundTrip(benchmark::State& state) {
    const WaveletFilter f = WaveletFilter::from_name(WaveletName::haar);
    const Eigen::MatrixXd x = sdm_shaped_matrix();
    const std::size_t levels = default_dwt2_levels(21, 42);
    for (auto _ : state) {
        const Dwt2Coeffs c = dwt2_forward(x, f, levels);
        benchmark::DoNotOptimize(dwt2_inverse(c, f));
    }
}
BENCHMARK(BM_Dwt2RoundTrip);

void BM_FitProjector(benchmark::State& state) {
    double sigma = 0.0;
    const Signal noisy = noisy_ecg(10, sigma);
    NlwtParams params;
    params.projector = static_cast<ProjectorKind>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(fit_projector(noisy, noisy.size() / 2, params));
}
BENCHMARK(BM_FitProjector)
    ->Arg(static_cast<int>(ProjectorKind::pca))
    ->Arg(static_cast<int>(ProjectorKind::dct));

void BM_ExtractSdm(benchmark::State& state) {
    double sigma = 0.0;
    const Signal noisy = noisy_ecg(10, sigma);
    NlwtParams params;
    const FeatureProjector proj = fit_projector(noisy, noisy.size() / 2, params);
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_sdm(noisy, noisy.size() / 2, params, proj));
}
BENCHMARK(BM_ExtractSdm);

void BM_DenoiseNlwt(benchmark::State& state) {
    double sigma = 0.0;
    const Signal noisy = noisy_ecg(10, sigma);
    NlwtParams params;
    params.wavelet = static_cast<WaveletName>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(denoise_nlwt(noisy, sigma, params));
    state.SetItemsProcessed(state.iterations() * noisy.size());
}
BENCHMARK(BM_DenoiseNlwt)
    ->Arg(static_cast<int>(WaveletName::haar))
    ->Arg(static_cast<int>(WaveletName::db2))
    ->Unit(benchmark::kMillisecond);

void BM_DenoiseNlm(benchmark::State& state) {
    double sigma = 0.0;
    const Signal noisy = noisy_ecg(10, sigma);
    NlmParams params;
    params.mu = NlmParams::bandwidth_from_sigma(sigma);
    for (auto _ : state) benchmark::DoNotOptimize(denoise_nlm(noisy, params));
    state.SetItemsProcessed(state.iterations() * noisy.size());
}
BENCHMARK(BM_DenoiseNlm)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
