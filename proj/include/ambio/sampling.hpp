#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ambio/language.hpp"
#include "ambio/trajectory.hpp"

namespace ambio {

/// Deterministic random stream. The engine's output sequence is fixed by
/// the C++ standard and the conversion to reals is done here, so a seed
/// reproduces the same draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    bool coin() { return (engine_() >> 63) != 0; }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

/// Seed for one generated sample, derived from the corpus seed, the source
/// id, and the sample kind so any subset of a corpus regenerates alone.
std::uint64_t derive_seed(std::uint64_t corpus_seed, std::string_view source_id,
                          std::string_view kind);

enum class MovementKind { azimuth_only, elevation_only, both };

std::string_view to_string(MovementKind m);

inline constexpr double kMinAzimuthChangeDeg = 45.0;
inline constexpr double kMinElevationChangeDeg = 30.0;
inline constexpr double kClipDurationS = 10.0;

/// Azimuth uniform on (-180, 180], elevation uniform on [-35, 35].
SphericalPosition sample_static_params(Rng& rng);

struct DynamicParams {
    Trajectory trajectory;
    SpeedClass speed;
    MovementKind movement;
};

/// Draws a start direction, a movement kind (1/3 each), end angles that
/// satisfy the minimum-change rule, a speed class, a duration inside that
/// class's bin and a window start so the window fits in the clip.
DynamicParams sample_dynamic_params(Rng& rng, double clip_duration_s = kClipDurationS);

/// Shortest angular distance between two azimuths, in [0, 180].
double circular_distance_deg(double a_deg, double b_deg);

}  // namespace ambio
