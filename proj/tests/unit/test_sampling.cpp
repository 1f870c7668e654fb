#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ambio/sampling.hpp"

using namespace ambio;

TEST_CASE("static parameter draws are uniform and bounded") {
    Rng rng(1234);
    const int n = 10000;
    std::vector<double> az(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        const SphericalPosition p = sample_static_params(rng);
        REQUIRE(std::abs(p.elevation_deg()) <= 35.0);
        REQUIRE(p.azimuth_deg() > -180.0);
        REQUIRE(p.azimuth_deg() <= 180.0);
        az[i] = p.azimuth_deg();
        mean += az[i];
    }
    mean /= n;
    CHECK(std::abs(mean) < 5.0);

    // Kolmogorov-Smirnov statistic against U(-180, 180).
    std::sort(az.begin(), az.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = (az[i] + 180.0) / 360.0;
        ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / n), std::abs(cdf - static_cast<double>(i + 1) / n)});
    }
    CHECK(ks < 0.02);
}

TEST_CASE("same seed gives the same draws") {
    Rng a(77), b(77), c(78);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto pa = sample_static_params(a);
        const auto pb = sample_static_params(b);
        const auto pc = sample_static_params(c);
        REQUIRE(pa == pb);
        differs |= !(pa == pc);
    }
    CHECK(differs);
}

TEST_CASE("derive_seed separates ids and kinds") {
    CHECK(derive_seed(1, "a", "static") == derive_seed(1, "a", "static"));
    CHECK(derive_seed(1, "a", "static") != derive_seed(1, "a", "dynamic"));
    CHECK(derive_seed(1, "a", "static") != derive_seed(2, "a", "static"));
    CHECK(derive_seed(1, "ab", "c") != derive_seed(1, "a", "bc"));
}

TEST_CASE("dynamic draws honour the minimum-change and window rules") {
    Rng rng(99);
    int counts[3] = {0, 0, 0};
    int speeds[3] = {0, 0, 0};
    for (int i = 0; i < 10000; ++i) {
        const DynamicParams d = sample_dynamic_params(rng);
        const Trajectory& t = d.trajectory;
        ++counts[static_cast<int>(d.movement)];
        ++speeds[static_cast<int>(d.speed)];
        const double daz = circular_distance_deg(t.start().azimuth_deg(), t.end().azimuth_deg());
        const double del = std::abs(t.end().elevation_deg() - t.start().elevation_deg());
        if (d.movement != MovementKind::elevation_only) REQUIRE(daz >= 45.0 - 1e-9);
        else {
            REQUIRE(t.start().azimuth_deg() == t.end().azimuth_deg());
            REQUIRE_FALSE(t.clockwise());
        }
        if (d.movement != MovementKind::azimuth_only) REQUIRE(del >= 30.0 - 1e-9);
        else REQUIRE(t.start().elevation_deg() == t.end().elevation_deg());
        REQUIRE(std::abs(t.end().elevation_deg()) <= 35.0);

        const SpeedBin& bin = speed_bin(d.speed);
        const double dur = t.move_end_s() - t.move_start_s();
        REQUIRE(dur >= bin.min_s - 1e-9);
        REQUIRE(dur <= bin.max_s + 1e-9);
        REQUIRE(classify_speed(dur) == d.speed);
        REQUIRE(t.move_start_s() >= 0.0);
        REQUIRE(t.move_end_s() <= 10.0);
    }
    for (int k = 0; k < 3; ++k) {
        CHECK(counts[k] > 3000);
        CHECK(speeds[k] > 3000);
    }
}

TEST_CASE("fast speed class gives 1-3 s windows") {
    Rng rng(3);
    int seen = 0;
    for (int i = 0; i < 2000; ++i) {
        const DynamicParams d = sample_dynamic_params(rng);
        if (d.speed != SpeedClass::fast) continue;
        ++seen;
        const double dur = d.trajectory.move_end_s() - d.trajectory.move_start_s();
        REQUIRE(dur >= 1.0 - 1e-12);
        REQUIRE(dur <= 3.0 + 1e-12);
    }
    CHECK(seen > 0);
}
