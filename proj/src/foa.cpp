#include "ambio/foa.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "ambio/error.hpp"
#include "ambio/trajectory.hpp"

namespace ambio {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_finite(std::span<const double> samples, const char* what) {
    for (double s : samples) {
        if (!std::isfinite(s)) throw Error(std::string(what) + ": non-finite sample");
    }
}

}  // namespace

double wrap_azimuth(double deg) {
    if (!std::isfinite(deg)) throw Error("azimuth must be finite");
    double r = std::fmod(deg, 360.0);
    if (r <= -180.0) r += 360.0;
    if (r > 180.0) r -= 360.0;
    return r;
}

MonoSignal::MonoSignal(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
    if (sample_rate_ <= 0) throw Error("sample rate must be positive");
    require_finite(samples_, "mono signal");
}

FoaSignal::FoaSignal(std::vector<double> w, std::vector<double> x, std::vector<double> y,
                     std::vector<double> z, int sample_rate)
    : w_(std::move(w)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)),
      sample_rate_(sample_rate) {
    if (sample_rate_ <= 0) throw Error("sample rate must be positive");
    if (x_.size() != w_.size() || y_.size() != w_.size() || z_.size() != w_.size())
        throw Error("FOA channels must have equal length");
    for (std::size_t c = 0; c < 4; ++c) require_finite(channel(c), "FOA signal");
}

std::span<const double> FoaSignal::channel(std::size_t index) const {
    switch (index) {
        case 0: return w_;
        case 1: return x_;
        case 2: return y_;
        case 3: return z_;
        default: throw Error("FOA channel index out of range: " + std::to_string(index));
    }
}

SphericalPosition::SphericalPosition(double azimuth_deg, double elevation_deg)
    : azimuth_deg_(wrap_azimuth(azimuth_deg)), elevation_deg_(elevation_deg) {
    if (!std::isfinite(elevation_deg) || elevation_deg < -90.0 || elevation_deg > 90.0)
        throw Error("elevation out of range [-90, 90]: " + std::to_string(elevation_deg));
}

FoaGains foa_gains(const SphericalPosition& pos) {
    const double az = deg2rad(pos.azimuth_deg());
    const double el = deg2rad(pos.elevation_deg());
    const double cos_el = std::cos(el);
    return {kInvSqrt2, std::cos(az) * cos_el, std::sin(az) * cos_el, std::sin(el)};
}

FoaSignal encode_static(const MonoSignal& mono, const SphericalPosition& pos) {
    if (mono.empty()) throw Error("encode: empty input");
    const FoaGains g = foa_gains(pos);
    const auto p = mono.samples();
    const std::size_t n = p.size();
    std::vector<double> w(n), x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = p[i] * g.w;
        x[i] = p[i] * g.x;
        y[i] = p[i] * g.y;
        z[i] = p[i] * g.z;
    }
    return {std::move(w), std::move(x), std::move(y), std::move(z), mono.sample_rate()};
}

FoaSignal encode_moving(const MonoSignal& mono, const Trajectory& traj) {
    if (mono.empty()) throw Error("encode: empty input");
    const double expected = traj.clip_duration_s() * mono.sample_rate();
    if (std::abs(static_cast<double>(mono.size()) - expected) > 1.0)
        throw Error("encode: mono duration " + std::to_string(mono.duration_s()) +
                    " s does not match trajectory clip " +
                    std::to_string(traj.clip_duration_s()) + " s");
    if (traj.is_static()) return encode_static(mono, traj.start());

    const auto p = mono.samples();
    const std::size_t n = p.size();
    const double rate = mono.sample_rate();
    std::vector<double> w(n), x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::min(static_cast<double>(i) / rate, traj.clip_duration_s());
        const FoaGains g = foa_gains(traj.position_at(t));
        w[i] = p[i] * g.w;
        x[i] = p[i] * g.x;
        y[i] = p[i] * g.y;
        z[i] = p[i] * g.z;
    }
    return {std::move(w), std::move(x), std::move(y), std::move(z), mono.sample_rate()};
}

}  // namespace ambio
