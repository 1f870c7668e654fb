#include "ambio/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ambio {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

std::uint64_t derive_seed(std::uint64_t corpus_seed, std::string_view source_id,
                          std::string_view kind) {
    std::uint64_t h = kFnvOffset;
    for (int i = 0; i < 8; ++i) {
        h ^= (corpus_seed >> (8 * i)) & 0xffU;
        h *= kFnvPrime;
    }
    h = fnv1a(h, source_id);
    h = fnv1a(h, std::string_view("\0", 1));
    h = fnv1a(h, kind);
    return mix(h);
}

std::string_view to_string(MovementKind m) {
    switch (m) {
        case MovementKind::azimuth_only: return "azimuth";
        case MovementKind::elevation_only: return "elevation";
        case MovementKind::both: return "both";
    }
    return "";
}

double circular_distance_deg(double a_deg, double b_deg) {
    double d = std::fmod(std::abs(a_deg - b_deg), 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

SphericalPosition sample_static_params(Rng& rng) {
    // 180 - 360u with u in [0, 1) covers (-180, 180].
    const double az = 180.0 - 360.0 * rng.uniform01();
    const double el = rng.uniform(-kElevationLimitDeg, kElevationLimitDeg);
    return {az, el};
}

DynamicParams sample_dynamic_params(Rng& rng, double clip_duration_s) {
    const SphericalPosition start = sample_static_params(rng);
    const auto movement = static_cast<MovementKind>(rng.below(3));

    double az_end = start.azimuth_deg();
    bool clockwise = false;
    if (movement != MovementKind::elevation_only) {
        const double offset = rng.uniform(kMinAzimuthChangeDeg, 360.0 - kMinAzimuthChangeDeg);
        az_end = start.azimuth_deg() + offset;
        clockwise = rng.coin();
    }

    double el_end = start.elevation_deg();
    if (movement != MovementKind::azimuth_only) {
        // Feasible end elevations: [-35, el0 - 30] and [el0 + 30, 35]. Their
        // combined length is at least 10 degrees for any el0 in [-35, 35].
        const double el0 = start.elevation_deg();
        const double below = std::max(0.0, el0 - kMinElevationChangeDeg + kElevationLimitDeg);
        const double above = std::max(0.0, kElevationLimitDeg - el0 - kMinElevationChangeDeg);
        const double v = rng.uniform01() * (below + above);
        if (v < below) {
            el_end = std::min(-kElevationLimitDeg + v, el0 - kMinElevationChangeDeg);
        } else {
            el_end = std::clamp(el0 + kMinElevationChangeDeg + (v - below),
                                el0 + kMinElevationChangeDeg, kElevationLimitDeg);
        }
    }

    const auto speed = static_cast<SpeedClass>(rng.below(3));
    const SpeedBin& bin = speed_bin(speed);
    const double duration = rng.uniform(bin.min_s, bin.max_s);
    const double move_start = rng.uniform01() * (clip_duration_s - duration);
    const double move_end = std::min(move_start + duration, clip_duration_s);

    return {Trajectory(start, SphericalPosition(az_end, el_end), clockwise, move_start, move_end,
                       clip_duration_s),
            speed, movement};
}

}  // namespace ambio
