#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ambio/trajectory.hpp"

namespace ambio {

enum class Direction { front, front_left, left, back_left, back, back_right, right, front_right };
enum class ElevationWord { up, down };
enum class SpeedClass { fast, moderate, slow };
enum class SampleKind { static_source, dynamic_source };
enum class ElevationMotion { none, rising, falling };

std::string_view to_string(Direction d);
std::string_view to_string(ElevationWord e);
std::string_view to_string(SpeedClass s);
std::string_view to_string(SampleKind k);

Direction parse_direction(std::string_view s);
SpeedClass parse_speed_class(std::string_view s);
SampleKind parse_sample_kind(std::string_view s);

/// One row of the spatial parameter table. Azimuth rows own [lower, upper);
/// the (157.5, 180] row also owns 180 itself so the rows tile (-180, 180].
struct AzimuthBin {
    double lower_deg;
    double upper_deg;
    Direction word;
};

struct SpeedBin {
    double min_s;
    double max_s;
    SpeedClass word;
};

/// The nine azimuth rows in table order (two of them map to "back").
std::span<const AzimuthBin> azimuth_bins();
/// fast [1, 3], moderate [3.5, 6.5], slow [7, 10] seconds.
std::span<const SpeedBin> speed_bins();
const SpeedBin& speed_bin(SpeedClass s);

/// Caption-eligible elevation range; sampled elevations stay inside it.
inline constexpr double kElevationLimitDeg = 35.0;
/// Elevations strictly beyond +-30 degrees earn an up/down word.
inline constexpr double kElevationWordDeg = 30.0;

Direction azimuth_to_direction(double azimuth_deg);
std::optional<ElevationWord> elevation_to_word(double elevation_deg);

/// Durations inside a bin map to that bin; durations in the gaps between
/// bins (3-3.5 s, 6.5-7 s) or outside [1, 10] s map to the nearest bin.
SpeedClass classify_speed(double duration_s);

/// Every spatial descriptor that a caption may use. Stored verbatim in the
/// sample record so an external rephrasing step can consume it.
struct SpatialPhrases {
    Direction start_direction = Direction::front;
    Direction end_direction = Direction::front;
    std::optional<ElevationWord> start_elevation;
    std::optional<ElevationWord> end_elevation;
    std::optional<SpeedClass> speed;
    ElevationMotion elevation_motion = ElevationMotion::none;
    bool azimuth_moves = false;
    bool clockwise = false;

    friend bool operator==(const SpatialPhrases&, const SpatialPhrases&) = default;
};

SpatialPhrases map_to_language(const Trajectory& traj);

/// Deterministic template captions:
///   static:  "<caption>, coming from the <dir>[ and <up|down>]"
///   dynamic: "<caption>, moving <speed> from the <dir1> to the <dir2>[ while rising|falling]"
///            "<caption>, moving <speed> <upward|downward> in the <dir>"   (elevation only)
std::string compose_caption(std::string_view original_caption, const SpatialPhrases& phrases,
                            SampleKind kind);

}  // namespace ambio
