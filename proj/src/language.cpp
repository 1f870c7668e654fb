#include "ambio/language.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ambio/error.hpp"

namespace ambio {

namespace {

constexpr std::array<AzimuthBin, 9> kAzimuthBins{{
    {-22.5, 22.5, Direction::front},
    {22.5, 67.5, Direction::front_left},
    {67.5, 112.5, Direction::left},
    {112.5, 157.5, Direction::back_left},
    {157.5, 180.0, Direction::back},
    {-180.0, -157.5, Direction::back},
    {-157.5, -112.5, Direction::back_right},
    {-112.5, -67.5, Direction::right},
    {-67.5, -22.5, Direction::front_right},
}};

constexpr std::array<SpeedBin, 3> kSpeedBins{{
    {1.0, 3.0, SpeedClass::fast},
    {3.5, 6.5, SpeedClass::moderate},
    {7.0, 10.0, SpeedClass::slow},
}};

constexpr std::array<std::string_view, 8> kDirectionNames{
    "front", "front-left", "left", "back-left", "back", "back-right", "right", "front-right"};

}  // namespace

std::string_view to_string(Direction d) { return kDirectionNames[static_cast<std::size_t>(d)]; }

std::string_view to_string(ElevationWord e) { return e == ElevationWord::up ? "up" : "down"; }

std::string_view to_string(SpeedClass s) {
    switch (s) {
        case SpeedClass::fast: return "fast";
        case SpeedClass::moderate: return "moderate";
        case SpeedClass::slow: return "slow";
    }
    return "";
}

std::string_view to_string(SampleKind k) {
    return k == SampleKind::static_source ? "static" : "dynamic";
}

Direction parse_direction(std::string_view s) {
    for (std::size_t i = 0; i < kDirectionNames.size(); ++i)
        if (kDirectionNames[i] == s) return static_cast<Direction>(i);
    throw Error("unknown direction word: " + std::string(s));
}

SpeedClass parse_speed_class(std::string_view s) {
    for (const auto& bin : kSpeedBins)
        if (to_string(bin.word) == s) return bin.word;
    throw Error("unknown speed class: " + std::string(s));
}

SampleKind parse_sample_kind(std::string_view s) {
    if (s == "static") return SampleKind::static_source;
    if (s == "dynamic") return SampleKind::dynamic_source;
    throw Error("unknown sample kind: " + std::string(s));
}

std::span<const AzimuthBin> azimuth_bins() { return kAzimuthBins; }
std::span<const SpeedBin> speed_bins() { return kSpeedBins; }

const SpeedBin& speed_bin(SpeedClass s) { return kSpeedBins[static_cast<std::size_t>(s)]; }

Direction azimuth_to_direction(double azimuth_deg) {
    const double az = wrap_azimuth(azimuth_deg);
    for (const auto& bin : kAzimuthBins) {
        if (az >= bin.lower_deg && az < bin.upper_deg) return bin.word;
    }
    return Direction::back;  // az == 180, closing edge of the (157.5, 180] row
}

std::optional<ElevationWord> elevation_to_word(double elevation_deg) {
    if (elevation_deg > kElevationWordDeg) return ElevationWord::up;
    if (elevation_deg < -kElevationWordDeg) return ElevationWord::down;
    return std::nullopt;
}

SpeedClass classify_speed(double duration_s) {
    if (duration_s <= kSpeedBins[0].max_s) return SpeedClass::fast;
    if (duration_s >= kSpeedBins[2].min_s) return SpeedClass::slow;
    if (duration_s >= kSpeedBins[1].min_s && duration_s <= kSpeedBins[1].max_s)
        return SpeedClass::moderate;
    if (duration_s < kSpeedBins[1].min_s)
        return duration_s < 0.5 * (kSpeedBins[0].max_s + kSpeedBins[1].min_s) ? SpeedClass::fast
                                                                               : SpeedClass::moderate;
    return duration_s < 0.5 * (kSpeedBins[1].max_s + kSpeedBins[2].min_s) ? SpeedClass::moderate
                                                                          : SpeedClass::slow;
}

SpatialPhrases map_to_language(const Trajectory& traj) {
    SpatialPhrases p;
    p.start_direction = azimuth_to_direction(traj.start().azimuth_deg());
    p.start_elevation = elevation_to_word(traj.start().elevation_deg());
    if (traj.is_static()) {
        p.end_direction = p.start_direction;
        p.end_elevation = p.start_elevation;
        return p;
    }
    p.end_direction = azimuth_to_direction(traj.end().azimuth_deg());
    p.end_elevation = elevation_to_word(traj.end().elevation_deg());
    p.speed = classify_speed(traj.move_end_s() - traj.move_start_s());
    p.azimuth_moves = traj.azimuth_delta_deg() != 0.0;
    p.clockwise = p.azimuth_moves && traj.clockwise();
    const double del = traj.elevation_delta_deg();
    p.elevation_motion = del > 0.0   ? ElevationMotion::rising
                         : del < 0.0 ? ElevationMotion::falling
                                     : ElevationMotion::none;
    return p;
}

std::string compose_caption(std::string_view original_caption, const SpatialPhrases& phrases,
                            SampleKind kind) {
    if (original_caption.empty()) throw Error("caption: original caption is empty");
    std::string out(original_caption);
    if (kind == SampleKind::static_source) {
        out += ", coming from the ";
        out += to_string(phrases.start_direction);
        if (phrases.start_elevation) {
            out += " and ";
            out += to_string(*phrases.start_elevation);
        }
        return out;
    }

    const std::string_view speed = phrases.speed ? to_string(*phrases.speed) : "";
    out += ", moving ";
    if (!speed.empty()) {
        out += speed;
        out += ' ';
    }
    if (phrases.azimuth_moves) {
        out += "from the ";
        out += to_string(phrases.start_direction);
        out += " to the ";
        out += to_string(phrases.end_direction);
        if (phrases.elevation_motion == ElevationMotion::rising) out += " while rising";
        if (phrases.elevation_motion == ElevationMotion::falling) out += " while falling";
    } else {
        out += phrases.elevation_motion == ElevationMotion::falling ? "downward" : "upward";
        out += " in the ";
        out += to_string(phrases.start_direction);
    }
    return out;
}

}  // namespace ambio
