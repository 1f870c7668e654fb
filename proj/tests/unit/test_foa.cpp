#include <doctest.h>

#include <cmath>

#include "ambio/error.hpp"
#include "ambio/foa.hpp"
#include "ambio/metrics.hpp"
#include "ambio/trajectory.hpp"
#include "support.hpp"

using namespace ambio;
using ambio::testing::noise_signal;
using ambio::testing::white_noise;

TEST_CASE("wrap_azimuth maps into (-180, 180]") {
    CHECK(wrap_azimuth(0.0) == 0.0);
    CHECK(wrap_azimuth(180.0) == 180.0);
    CHECK(wrap_azimuth(-180.0) == 180.0);
    CHECK(wrap_azimuth(190.0) == doctest::Approx(-170.0));
    CHECK(wrap_azimuth(-190.0) == doctest::Approx(170.0));
    CHECK(wrap_azimuth(720.0) == 0.0);
    CHECK(wrap_azimuth(540.0) == 180.0);
    CHECK_THROWS_AS(wrap_azimuth(NAN), Error);
}

TEST_CASE("SphericalPosition rejects out-of-range elevation") {
    CHECK_THROWS_AS(SphericalPosition(0.0, 90.5), Error);
    CHECK_THROWS_AS(SphericalPosition(0.0, -91.0), Error);
    CHECK_NOTHROW(SphericalPosition(0.0, 90.0));
    CHECK(SphericalPosition(370.0, 0.0).azimuth_deg() == doctest::Approx(10.0));
}

TEST_CASE("signal types validate their contents") {
    CHECK_THROWS_AS(MonoSignal({1.0, NAN}, 16000), Error);
    CHECK_THROWS_AS(MonoSignal({1.0}, 0), Error);
    CHECK_THROWS_AS(FoaSignal({1.0}, {1.0}, {1.0, 2.0}, {1.0}, 16000), Error);
    CHECK_THROWS_AS(FoaSignal({1.0}, {INFINITY}, {1.0}, {1.0}, 16000), Error);
}

TEST_CASE("encode_static unit examples") {
    SUBCASE("front") {
        const auto foa = encode_static(MonoSignal({1.0}, 16000), {0.0, 0.0});
        CHECK(foa.w()[0] == doctest::Approx(0.70711).epsilon(1e-5));
        CHECK(foa.x()[0] == doctest::Approx(1.0));
        CHECK(foa.y()[0] == doctest::Approx(0.0));
        CHECK(foa.z()[0] == doctest::Approx(0.0));
    }
    SUBCASE("left") {
        const auto foa = encode_static(MonoSignal({1.0}, 16000), {90.0, 0.0});
        CHECK(std::abs(foa.x()[0]) < 1e-15);
        CHECK(foa.y()[0] == doctest::Approx(1.0));
        CHECK(foa.z()[0] == 0.0);
    }
    SUBCASE("oblique") {
        // Scalar evaluation: 0.5 * cos(45 deg) * cos(30 deg).
        const double expected_xy = 0.3061862178478973;
        const auto foa = encode_static(MonoSignal({0.5}, 16000), {45.0, 30.0});
        CHECK(foa.x()[0] == doctest::Approx(expected_xy).epsilon(1e-12));
        CHECK(foa.y()[0] == doctest::Approx(expected_xy).epsilon(1e-12));
        CHECK(foa.z()[0] == doctest::Approx(0.25).epsilon(1e-12));
    }
    CHECK(encode_static(MonoSignal({1.0, 2.0, 3.0}, 44100), {10.0, 5.0}).sample_rate() == 44100);
    CHECK_THROWS_AS(encode_static(MonoSignal({}, 16000), {0.0, 0.0}), Error);
}

TEST_CASE("encoder energy, direction, linearity and wrap properties") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> az(-180.0, 180.0), el(-90.0, 90.0), coef(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const SphericalPosition pos(az(gen), el(gen));
        const auto p = white_noise(64, 100 + trial);
        const auto q = white_noise(64, 900 + trial);
        const auto foa = encode_static(MonoSignal(p, 16000), pos);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double dip = foa.x()[i] * foa.x()[i] + foa.y()[i] * foa.y()[i] + foa.z()[i] * foa.z()[i];
            const double p2 = p[i] * p[i];
            REQUIRE(std::abs(dip - p2) <= 1e-9 * p2);
            REQUIRE(std::abs(dip - 2.0 * foa.w()[i] * foa.w()[i]) <= 1e-9 * p2);
            if (std::abs(p[i]) > 1e-6 && std::abs(pos.elevation_deg()) < 89.0) {
                const double s = p[i] > 0 ? 1.0 : -1.0;
                const double est_az = std::atan2(s * foa.y()[i], s * foa.x()[i]);
                const double diff = std::remainder(est_az - deg2rad(pos.azimuth_deg()), 2.0 * kPi);
                REQUIRE(std::abs(diff) < 1e-9);
                REQUIRE(std::abs(std::asin(foa.z()[i] / p[i]) - deg2rad(pos.elevation_deg())) < 1e-9);
            }
        }

        const double a = coef(gen), b = coef(gen);
        std::vector<double> mix(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) mix[i] = a * p[i] + b * q[i];
        const auto fm = encode_static(MonoSignal(mix, 16000), pos);
        const auto fq = encode_static(MonoSignal(q, 16000), pos);
        for (std::size_t c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < p.size(); ++i)
                REQUIRE(fm.channel(c)[i] ==
                        doctest::Approx(a * foa.channel(c)[i] + b * fq.channel(c)[i]).epsilon(1e-12));

        const auto wrapped = encode_static(MonoSignal(p, 16000), {pos.azimuth_deg() + 360.0, pos.elevation_deg()});
        for (std::size_t c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < p.size(); ++i)
                REQUIRE(wrapped.channel(c)[i] == doctest::Approx(foa.channel(c)[i]).epsilon(1e-12));
    }
}

TEST_CASE("encode_moving with a degenerate trajectory equals encode_static bit for bit") {
    const MonoSignal mono = noise_signal(1.0, 16000, 3);
    const SphericalPosition pos(33.0, -12.0);
    const Trajectory traj(pos, pos, false, 0.2, 0.8, 1.0);
    const auto a = encode_moving(mono, traj);
    const auto b = encode_static(mono, pos);
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t i = 0; i < mono.size(); ++i) REQUIRE(a.channel(c)[i] == b.channel(c)[i]);
}

TEST_CASE("encode_moving follows the trajectory sample by sample") {
    const int rate = 1000;
    const std::size_t n = 2001;  // 2 s clip plus the endpoint sample
    std::vector<double> impulses(n, 0.0);
    for (std::size_t i = 0; i < n; i += 100) impulses[i] = 1.0;
    const Trajectory traj({-90.0, 0.0}, {90.0, 0.0}, false, 0.0, 2.0, 2.0);
    const auto foa = encode_moving(MonoSignal(impulses, rate), traj);

    // Azimuth passes through 0 at T/2: y changes sign there and x peaks.
    CHECK(foa.y()[900] < 0.0);
    CHECK(std::abs(foa.y()[1000]) < 1e-12);
    CHECK(foa.x()[1000] == doctest::Approx(1.0));
    CHECK(foa.y()[1100] > 0.0);
    for (std::size_t i = 0; i < n; i += 100) {
        const double az = rad2deg(std::atan2(foa.y()[i], foa.x()[i]));
        CHECK(az == doctest::Approx(traj.position_at(static_cast<double>(i) / rate).azimuth_deg()).epsilon(1e-9));
    }
}

TEST_CASE("encode_moving ramp is tracked by the framed DoA estimate") {
    const int rate = 16000;
    const MonoSignal mono = noise_signal(4.0, rate, 21);
    const Trajectory traj({0.0, 0.0}, {90.0, 0.0}, false, 0.0, 4.0, 4.0);
    const DoaTrack track = estimate_doa(encode_moving(mono, traj));
    double sq = 0.0;
    for (const auto& f : track.frames) {
        REQUIRE(f.valid());
        const double d = f.direction->azimuth_deg() - traj.position_at(f.time_s).azimuth_deg();
        sq += d * d;
    }
    CHECK(std::sqrt(sq / static_cast<double>(track.frames.size())) < 2.0);
}

TEST_CASE("encode_moving rejects mismatched durations") {
    const Trajectory traj({0.0, 0.0}, {90.0, 0.0}, false, 0.0, 1.0, 1.0);
    CHECK_NOTHROW(encode_moving(MonoSignal(std::vector<double>(16001, 0.1), 16000), traj));
    CHECK_NOTHROW(encode_moving(MonoSignal(std::vector<double>(15999, 0.1), 16000), traj));
    CHECK_THROWS_AS(encode_moving(MonoSignal(std::vector<double>(15000, 0.1), 16000), traj), Error);
}
