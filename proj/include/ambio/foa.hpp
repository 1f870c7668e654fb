#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ambio {

class Trajectory;

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps any finite angle into (-180, 180].
double wrap_azimuth(double deg);

/// A single-channel pressure signal.
class MonoSignal {
public:
    MonoSignal(std::vector<double> samples, int sample_rate);

    std::span<const double> samples() const { return samples_; }
    int sample_rate() const { return sample_rate_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    double duration_s() const { return static_cast<double>(samples_.size()) / sample_rate_; }

private:
    std::vector<double> samples_;
    int sample_rate_;
};

/// First-order B-format signal, channels in W, X, Y, Z order.
class FoaSignal {
public:
    FoaSignal(std::vector<double> w, std::vector<double> x, std::vector<double> y,
              std::vector<double> z, int sample_rate);

    std::span<const double> w() const { return w_; }
    std::span<const double> x() const { return x_; }
    std::span<const double> y() const { return y_; }
    std::span<const double> z() const { return z_; }

    /// Channel by index: 0=W, 1=X, 2=Y, 3=Z.
    std::span<const double> channel(std::size_t index) const;

    int sample_rate() const { return sample_rate_; }
    std::size_t size() const { return w_.size(); }
    double duration_s() const { return static_cast<double>(w_.size()) / sample_rate_; }

private:
    std::vector<double> w_, x_, y_, z_;
    int sample_rate_;
};

/// A direction on the sphere. Azimuth is counter-clockwise-positive from the
/// front (+90 is left) and is stored wrapped into (-180, 180]. Elevation is
/// positive up; values outside [-90, 90] are rejected.
class SphericalPosition {
public:
    SphericalPosition() = default;
    SphericalPosition(double azimuth_deg, double elevation_deg);

    double azimuth_deg() const { return azimuth_deg_; }
    double elevation_deg() const { return elevation_deg_; }

    friend bool operator==(const SphericalPosition&, const SphericalPosition&) = default;

private:
    double azimuth_deg_ = 0.0;
    double elevation_deg_ = 0.0;
};

/// Per-channel gains applied to the pressure signal at one direction.
struct FoaGains {
    double w, x, y, z;
};

FoaGains foa_gains(const SphericalPosition& pos);

FoaSignal encode_static(const MonoSignal& mono, const SphericalPosition& pos);

/// Encodes a source following `traj`. Gains are evaluated at every sample
/// time n / sample_rate. The mono duration must match the trajectory clip
/// length to within one sample.
FoaSignal encode_moving(const MonoSignal& mono, const Trajectory& traj);

}  // namespace ambio
