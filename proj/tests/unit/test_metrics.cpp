#include <doctest.h>

#include <cmath>
#include <random>

#include "nlwt/metrics.hpp"
#include "nlwt/noise.hpp"

using namespace nlwt;

namespace {

Signal make(std::vector<double> samples) {
    return Signal{std::move(samples), 360.0, "test"};
}

} // namespace

TEST_CASE("snr_improvement hand cases") {
    // denoised == noisy gives exactly 0 dB
    const Signal u = make({0.5, -0.25, 0.75});
    const Signal v = make({0.6, -0.20, 0.70});
    CHECK(*snr_improvement(u, v, v) == 0.0);

    // 10*log10(4/1)
    const Signal u2 = make({0.0, 0.0});
    const Signal v2 = make({2.0, 0.0});
    const Signal d2 = make({1.0, 0.0});
    CHECK(*snr_improvement(u2, v2, d2) ==
          doctest::Approx(6.020599913279624).epsilon(1e-12));

    // perfect reconstruction reports the sentinel
    CHECK(!snr_improvement(u2, v2, u2).has_value());
}

TEST_CASE("snr_improvement checks lengths") {
    CHECK_THROWS_AS(snr_improvement(make({1.0}), make({1.0, 2.0}), make({1.0})),
                    LengthMismatch);
}

TEST_CASE("mse hand cases") {
    CHECK(mse(make({1, 2, 3}), make({1, 2, 3})) == 0.0);
    CHECK(mse(make({1, 1, 1, 1}), make({1.1, 0.9, 1.1, 0.9})) ==
          doctest::Approx(0.01).epsilon(1e-12));
    CHECK(mse(make({0.0}), make({3.0})) == 9.0);
}

TEST_CASE("prd hand cases") {
    CHECK(prd(make({1, 2}), make({1, 2})) == 0.0);
    CHECK(prd(make({1, 1, 1, 1}), make({1.1, 0.9, 1.1, 0.9})) ==
          doctest::Approx(10.0).epsilon(1e-12));
    CHECK(prd(make({2, 2}), make({0, 0})) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK_THROWS_AS(prd(make({0, 0}), make({1, 1})), AllZeroSignal);
}

TEST_CASE("prd^2 * power / 1e4 equals mse, fuzzed") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 50;
        std::vector<double> u(n), d(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = dist(rng);
            d[i] = dist(rng);
        }
        const Signal clean = make(u), denoised = make(d);
        if (mean_power(clean.samples) == 0.0) continue;
        const double p = prd(clean, denoised);
        const double m = mse(clean, denoised);
        const double reconstructed = p * p * mean_power(clean.samples) / 1e4;
        CHECK(reconstructed == doctest::Approx(m).epsilon(1e-12));
    }
}

TEST_CASE("metrics are pure: repeated evaluation is bit-identical") {
    const Signal u = synth_ecg(3, 360.0, 60.0, 2);
    auto [v, sigma] = add_awgn(u, NoiseSpec{10.0, 3});
    const double a = mse(u, v);
    const double b = mse(u, v);
    CHECK(a == b);
    CHECK(*snr_improvement(u, v, v) == *snr_improvement(u, v, v));
}
