#include <doctest.h>

#include <cmath>
#include <set>

#include "ambio/conditioner.hpp"
#include "ambio/error.hpp"
#include "support.hpp"

using namespace ambio;
using ambio::testing::TempDir;

TEST_CASE("static source fills a single azimuth bin") {
    const auto traj = Trajectory::stationary({0.0, 0.0}, 10.0);
    const AxisMatrix m = build_state_matrix(traj, Axis::azimuth, 72, 100);
    CHECK(m.bin_width_deg == 5.0);
    CHECK(m.frame_rate_hz == 10.0);
    const std::size_t bin = quantize(0.0, Axis::azimuth, 72);
    CHECK(bin == 36);
    for (std::size_t f = 0; f < 100; ++f) {
        std::size_t ones = 0;
        for (std::size_t r = 0; r < 72; ++r) ones += m.matrix.at(r, f);
        REQUIRE(ones == 1);
        REQUIRE(m.matrix.at(bin, f) == 1);
    }
}

TEST_CASE("half-circle sweep occupies 36 bins in order") {
    const Trajectory traj({-90.0, 0.0}, {90.0, 0.0}, false, 0.0, 10.0, 10.0);
    const AxisMatrix m = build_state_matrix(traj, Axis::azimuth, 72, 100);

    // Oracle: quantize the closed-form line at frame centres.
    std::set<long> expected;
    for (int f = 0; f < 100; ++f) {
        const double t = (f + 0.5) * 0.1;
        const double az = -90.0 + 18.0 * t;
        expected.insert(static_cast<long>(std::floor((az + 180.0) / 5.0)));
    }
    REQUIRE(expected.size() == 36);

    std::set<std::size_t> seen;
    std::size_t prev = 0;
    for (std::size_t f = 0; f < 100; ++f) {
        const std::size_t b = m.matrix.occupied_row(f, 0, 72);
        CHECK(b >= prev);
        prev = b;
        seen.insert(b);
    }
    CHECK(seen.size() == 36);
    CHECK(std::equal(seen.begin(), seen.end(), expected.begin(), [](std::size_t a, long b) { return static_cast<long>(a) == b; }));
}

TEST_CASE("quantize clamps to the axis") {
    CHECK(quantize(-180.0, Axis::azimuth, 72) == 0);
    CHECK(quantize(180.0, Axis::azimuth, 72) == 71);
    CHECK(quantize(-35.0, Axis::elevation, 14) == 0);
    CHECK(quantize(35.0, Axis::elevation, 14) == 13);
    CHECK(quantize(60.0, Axis::elevation, 14) == 13);
    CHECK(quantize(-60.0, Axis::elevation, 14) == 0);
    CHECK(quantize(0.0, Axis::elevation, 14) == 7);
}

TEST_CASE("conditioning tensor shape and column sums") {
    const Trajectory traj({10.0, -20.0}, {-100.0, 20.0}, true, 2.0, 5.0, 10.0);
    const ConditioningTensor t = build_conditioning_tensor(traj, 72, 14, 100);
    CHECK(t.matrix.rows() == 86);
    CHECK(t.matrix.frames() == 100);
    for (std::size_t f = 0; f < 100; ++f) {
        int sum = 0;
        for (std::size_t r = 0; r < 86; ++r) sum += t.matrix.at(r, f);
        REQUIRE(sum == 2);
        REQUIRE(t.matrix.occupied_row(f, 0, 72) < 72);
        REQUIRE(t.matrix.occupied_row(f, 72, 86) >= 72);
    }

    const ConditioningTensor fixed = build_conditioning_tensor(Trajectory::stationary({50.0, 10.0}, 10.0), 72, 14, 100);
    for (std::size_t f = 1; f < 100; ++f)
        for (std::size_t r = 0; r < 86; ++r) REQUIRE(fixed.matrix.at(r, f) == fixed.matrix.at(r, 0));
}

TEST_CASE("state matrix argument checks") {
    const auto traj = Trajectory::stationary({0.0, 0.0}, 10.0);
    CHECK_THROWS_AS(build_state_matrix(traj, Axis::azimuth, 1, 100), Error);
    CHECK_THROWS_AS(build_state_matrix(traj, Axis::azimuth, 72, 0), Error);
    CHECK_NOTHROW(build_state_matrix(traj, Axis::azimuth, 2, 1));
}

TEST_CASE("temporal conditions") {
    const Trajectory moving({0.0, 0.0}, {90.0, 0.0}, false, 2.0, 5.0, 10.0);
    CHECK(temporal_conditions(moving).move_start_s == 2.0);
    CHECK(temporal_conditions(moving).total_move_s == 3.0);
    const auto s = temporal_conditions(Trajectory::stationary({0.0, 0.0}, 10.0));
    CHECK(s.move_start_s == 0.0);
    CHECK(s.total_move_s == 0.0);
    const Trajectory full({0.0, 0.0}, {0.0, 31.0}, false, 0.0, 10.0, 10.0);
    CHECK(temporal_conditions(full).move_start_s == 0.0);
    CHECK(temporal_conditions(full).total_move_s == 10.0);
}

TEST_CASE(".smx files carry a JSON header and little-endian floats") {
    TempDir dir("smx");
    const Trajectory traj({-90.0, 0.0}, {90.0, 32.0}, false, 1.0, 9.0, 10.0);
    const ConditioningTensor t = build_conditioning_tensor(traj, 72, 14, 100);
    write_smx(t, temporal_conditions(traj), dir.file("m.smx"));
    const SmxFile f = read_smx(dir.file("m.smx"));
    CHECK(f.rows == 86);
    CHECK(f.frames == 100);
    CHECK(f.header_json.find("\"bin_width_deg\":[5.0,5.0]") != std::string::npos);
    CHECK(f.header_json.find("\"frame_rate_hz\":10.0") != std::string::npos);
    REQUIRE(f.values.size() == 8600);
    for (std::size_t r = 0; r < 86; ++r)
        for (std::size_t c = 0; c < 100; ++c) REQUIRE(f.values[r * 100 + c] == static_cast<float>(t.matrix.at(r, c)));
}
