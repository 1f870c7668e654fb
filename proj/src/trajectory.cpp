#include "ambio/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ambio/error.hpp"

namespace ambio {

namespace {

// Non-negative remainder in [0, 360).
double mod360(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    if (r >= 360.0) r -= 360.0;
    return r;
}

}  // namespace

double signed_azimuth_delta(double start_deg, double end_deg, bool clockwise) {
    if (!std::isfinite(start_deg) || !std::isfinite(end_deg))
        throw Error("azimuth delta: non-finite input");
    if (clockwise) {
        const double d = mod360(start_deg - end_deg);
        return d == 0.0 ? 0.0 : -d;
    }
    return mod360(end_deg - start_deg);
}

Trajectory::Trajectory(SphericalPosition start, SphericalPosition end, bool clockwise,
                       double move_start_s, double move_end_s, double clip_duration_s)
    : start_(start), end_(end), clockwise_(clockwise), move_start_s_(move_start_s),
      move_end_s_(move_end_s), clip_duration_s_(clip_duration_s),
      azimuth_delta_(signed_azimuth_delta(start.azimuth_deg(), end.azimuth_deg(), clockwise)) {
    if (!(std::isfinite(move_start_s) && std::isfinite(move_end_s) &&
          std::isfinite(clip_duration_s)))
        throw Error("trajectory: non-finite time");
    if (!(0.0 <= move_start_s && move_start_s < move_end_s && move_end_s <= clip_duration_s))
        throw Error("trajectory: movement window [" + std::to_string(move_start_s) + ", " +
                    std::to_string(move_end_s) + "] must satisfy 0 <= start < end <= " +
                    std::to_string(clip_duration_s));
}

Trajectory Trajectory::stationary(SphericalPosition pos, double clip_duration_s) {
    return {pos, pos, false, 0.0, clip_duration_s, clip_duration_s};
}

bool Trajectory::is_static() const {
    return azimuth_delta_ == 0.0 && start_.elevation_deg() == end_.elevation_deg();
}

double Trajectory::progress(double t) const {
    if (t <= move_start_s_) return 0.0;
    if (t >= move_end_s_) return 1.0;
    return (t - move_start_s_) / (move_end_s_ - move_start_s_);
}

SphericalPosition Trajectory::position_at(double t) const {
    if (!(t >= 0.0 && t <= clip_duration_s_))
        throw Error("trajectory: time " + std::to_string(t) + " outside clip [0, " +
                    std::to_string(clip_duration_s_) + "]");
    if (t <= move_start_s_) return start_;
    if (t >= move_end_s_) return end_;
    const double f = progress(t);
    const double el0 = start_.elevation_deg();
    const double el1 = end_.elevation_deg();
    const double el = el0 + f * (el1 - el0);
    // Linear interpolation cannot leave the endpoint interval; clamp guards rounding.
    return {start_.azimuth_deg() + f * azimuth_delta_,
            std::clamp(el, std::min(el0, el1), std::max(el0, el1))};
}

}  // namespace ambio
