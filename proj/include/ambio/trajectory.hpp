#pragma once

#include "ambio/foa.hpp"

namespace ambio {

/// Signed azimuth travel from `start_deg` to `end_deg`.
///
/// Counter-clockwise (increasing azimuth) returns a value in [0, 360);
/// clockwise returns a value in (-360, 0]. Identical endpoints (mod 360)
/// always give 0, so a trajectory never makes a full revolution.
double signed_azimuth_delta(double start_deg, double end_deg, bool clockwise);

/// Source path over a clip. The source sits at `start` until the movement
/// window opens, moves linearly (azimuth along the path chosen by
/// `clockwise`) and rests at `end` once the window closes.
///
/// "Clockwise" means decreasing azimuth under the ccw-positive convention.
class Trajectory {
public:
    Trajectory(SphericalPosition start, SphericalPosition end, bool clockwise,
               double move_start_s, double move_end_s, double clip_duration_s);

    /// A source that never moves; the window spans the whole clip.
    static Trajectory stationary(SphericalPosition pos, double clip_duration_s);

    const SphericalPosition& start() const { return start_; }
    const SphericalPosition& end() const { return end_; }
    bool clockwise() const { return clockwise_; }
    double move_start_s() const { return move_start_s_; }
    double move_end_s() const { return move_end_s_; }
    double clip_duration_s() const { return clip_duration_s_; }

    double azimuth_delta_deg() const { return azimuth_delta_; }
    double elevation_delta_deg() const { return end_.elevation_deg() - start_.elevation_deg(); }

    /// True when neither angle changes.
    bool is_static() const;

    /// Throws if t lies outside [0, clip_duration_s].
    SphericalPosition position_at(double t) const;

    /// Fraction of the movement completed at time t, clamped to [0, 1]. No
    /// range check on t.
    double progress(double t) const;

private:
    SphericalPosition start_;
    SphericalPosition end_;
    bool clockwise_;
    double move_start_s_;
    double move_end_s_;
    double clip_duration_s_;
    double azimuth_delta_;
};

}  // namespace ambio
