#include <doctest.h>

#include <cmath>
#include <complex>

#include "ambio/error.hpp"
#include "ambio/preprocess.hpp"
#include "support.hpp"

using namespace ambio;
using ambio::testing::sine;
using ambio::testing::white_noise;

namespace {

// Direct DFT magnitude at integer bin k.
double dft_magnitude(std::span<const double> x, std::size_t k) {
    std::complex<double> acc{0.0, 0.0};
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += x[i] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) * static_cast<double>(i) / n);
    return std::abs(acc);
}

}  // namespace

TEST_CASE("preprocess truncates a long signal to its first ten seconds") {
    const auto samples = white_noise(20 * 16000, 1);
    const MonoSignal out = preprocess(MonoSignal(samples, 16000));
    REQUIRE(out.size() == 160000);
    CHECK(out.sample_rate() == 16000);
    for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out.samples()[i] == samples[i]);
}

TEST_CASE("preprocess loops a short signal end to start") {
    const auto samples = white_noise(4 * 16000, 2);
    const MonoSignal out = preprocess(MonoSignal(samples, 16000));
    REQUIRE(out.size() == 160000);
    for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out.samples()[i] == samples[i % samples.size()]);
}

TEST_CASE("preprocess trims leading and trailing silence before looping") {
    std::vector<double> samples(16000, 0.0);                    // 1 s silence
    const auto body = white_noise(3 * 16000, 3);
    samples.insert(samples.end(), body.begin(), body.end());
    samples.insert(samples.end(), 8000, 1e-4);                  // -80 dBFS tail
    const MonoSignal out = preprocess(MonoSignal(samples, 16000));
    REQUIRE(out.size() == 160000);
    CHECK(out.samples()[0] == body[0]);
    CHECK(out.samples()[body.size()] == body[0]);
    CHECK(out.samples()[body.size() - 1] == body.back());
}

TEST_CASE("preprocess rejects all-silent input") {
    CHECK_THROWS_AS(preprocess(MonoSignal(std::vector<double>(16000, 0.0), 16000)), Error);
    CHECK_THROWS_AS(preprocess(MonoSignal(std::vector<double>(16000, 1e-3), 16000)), Error);
    CHECK_THROWS_AS(preprocess(MonoSignal({}, 16000)), Error);
}

TEST_CASE("resampling 44.1 kHz keeps a 1 kHz sine at 1 kHz") {
    const MonoSignal in(sine(441000, 1000.0, 44100), 44100);
    const MonoSignal out = preprocess(in);
    REQUIRE(out.size() == 160000);
    REQUIRE(out.sample_rate() == 16000);
    // Bin spacing is 0.1 Hz over 10 s; 1 kHz sits at bin 10000. Scan a
    // window of candidate bins and require the peak within one bin.
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t k = 9950; k <= 10050; ++k) {
        const double m = dft_magnitude(out.samples(), k);
        if (m > best_mag) {
            best_mag = m;
            best = k;
        }
    }
    CHECK(std::abs(static_cast<long>(best) - 10000) <= 1);
    // Amplitude is preserved in the passband.
    double peak = 0.0;
    for (std::size_t i = 1000; i < 150000; ++i) peak = std::max(peak, std::abs(out.samples()[i]));
    CHECK(peak == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("resampler attenuates content above the new Nyquist frequency") {
    // 10 kHz cannot be represented at 16 kHz and must be suppressed by at least 60 dB.
    const MonoSignal in(sine(48000, 10000.0, 48000), 48000);
    const MonoSignal out = resample(in, 16000);
    REQUIRE(out.size() == 16000);
    double rms = 0.0;
    for (std::size_t i = 2000; i < 14000; ++i) rms += out.samples()[i] * out.samples()[i];
    rms = std::sqrt(rms / 12000.0);
    CHECK(20.0 * std::log10(rms / (0.5 / std::sqrt(2.0))) < -60.0);
}

TEST_CASE("upsampling is interpolating") {
    const MonoSignal in(sine(8000, 440.0, 8000), 8000);
    const MonoSignal out = resample(in, 16000);
    REQUIRE(out.size() == 16000);
    for (std::size_t i = 400; i < 7600; ++i) REQUIRE(out.samples()[2 * i] == doctest::Approx(in.samples()[i]).epsilon(1e-3).scale(0.5));
}
