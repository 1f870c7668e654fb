#include "ambio/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "ambio/error.hpp"

namespace ambio {

namespace {

// FFTW's planner is not re-entrant; executing distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class RealFft {
public:
    explicit RealFft(std::size_t n) : n_(n) {
        std::lock_guard lock(planner_mutex());
        in_ = fftw_alloc_real(n);
        out_ = fftw_alloc_complex(n / 2 + 1);
        plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
        if (plan_ == nullptr) {
            fftw_free(in_);
            fftw_free(out_);
            throw Error("FFT planning failed for size " + std::to_string(n));
        }
    }
    ~RealFft() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    std::span<double> input() { return {in_, n_}; }
    void execute() { fftw_execute(plan_); }
    std::size_t bins() const { return n_ / 2 + 1; }
    double power(std::size_t k) const { return out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1]; }

private:
    std::size_t n_;
    double* in_;
    fftw_complex* out_;
    fftw_plan plan_;
};

}  // namespace

IntensityVectors intensity_vectors(const FoaSignal& foa) {
    const std::size_t n = foa.size();
    IntensityVectors iv{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    const auto w = foa.w(), x = foa.x(), y = foa.y(), z = foa.z();
    for (std::size_t i = 0; i < n; ++i) {
        iv.ix[i] = w[i] * x[i];
        iv.iy[i] = w[i] * y[i];
        iv.iz[i] = w[i] * z[i];
    }
    return iv;
}

std::size_t DoaTrack::valid_count() const {
    return static_cast<std::size_t>(
        std::count_if(frames.begin(), frames.end(), [](const DoaFrame& f) { return f.valid(); }));
}

DoaTrack estimate_doa(const FoaSignal& foa, const DoaOptions& opts) {
    if (opts.frame_len < 1 || opts.hop < 1) throw Error("DoA: frame length and hop must be >= 1");
    DoaTrack track;
    track.frame_len = opts.frame_len;
    track.hop = opts.hop;
    track.sample_rate = foa.sample_rate();
    const std::size_t n = foa.size();
    if (n == 0) return track;

    const auto w = foa.w(), x = foa.x(), y = foa.y(), z = foa.z();
    const std::size_t len = std::min(opts.frame_len, n);
    const std::size_t count = 1 + (n - len) / opts.hop;

    struct Sums {
        double ix, iy, iz;
    };
    std::vector<Sums> sums(count);
    track.frames.resize(count);
    double max_energy = 0.0;
    for (std::size_t f = 0; f < count; ++f) {
        const std::size_t begin = f * opts.hop;
        Sums s{0.0, 0.0, 0.0};
        double energy = 0.0;
        for (std::size_t i = begin; i < begin + len; ++i) {
            s.ix += w[i] * x[i];
            s.iy += w[i] * y[i];
            s.iz += w[i] * z[i];
            energy += w[i] * w[i];
        }
        sums[f] = s;
        DoaFrame& frame = track.frames[f];
        frame.start_sample = begin;
        frame.time_s = (static_cast<double>(begin) + 0.5 * static_cast<double>(len)) / foa.sample_rate();
        frame.energy = energy / static_cast<double>(len);
        max_energy = std::max(max_energy, frame.energy);
    }

    const double gate = opts.gate_ratio * max_energy;
    for (std::size_t f = 0; f < count; ++f) {
        DoaFrame& frame = track.frames[f];
        if (max_energy <= 0.0 || frame.energy <= 0.0 || frame.energy < gate) continue;
        const Sums& s = sums[f];
        const double az = rad2deg(std::atan2(s.iy, s.ix));
        const double el = rad2deg(std::atan2(s.iz, std::hypot(s.ix, s.iy)));
        frame.direction = SphericalPosition(az, std::clamp(el, -90.0, 90.0));
    }
    return track;
}

double circular_l1(std::span<const double> a_deg, std::span<const double> b_deg) {
    if (a_deg.size() != b_deg.size()) throw Error("circular L1: length mismatch");
    if (a_deg.empty()) throw Error("circular L1: no frames to compare");
    double total = 0.0;
    for (std::size_t i = 0; i < a_deg.size(); ++i) {
        const double d = std::fmod(std::abs(a_deg[i] - b_deg[i]), 360.0);
        total += std::min(d, 360.0 - d);
    }
    return total / static_cast<double>(a_deg.size());
}

double linear_l1(std::span<const double> a_deg, std::span<const double> b_deg) {
    if (a_deg.size() != b_deg.size()) throw Error("L1: length mismatch");
    if (a_deg.empty()) throw Error("L1: no frames to compare");
    double total = 0.0;
    for (std::size_t i = 0; i < a_deg.size(); ++i) total += std::abs(a_deg[i] - b_deg[i]);
    return total / static_cast<double>(a_deg.size());
}

double spatial_angle(const SphericalPosition& a, const SphericalPosition& b) {
    const double el_a = deg2rad(a.elevation_deg());
    const double el_b = deg2rad(b.elevation_deg());
    const double half_del = 0.5 * (el_b - el_a);
    const double half_daz = 0.5 * deg2rad(b.azimuth_deg() - a.azimuth_deg());
    const double s_el = std::sin(half_del);
    const double s_az = std::sin(half_daz);
    const double h = std::clamp(s_el * s_el + std::cos(el_a) * std::cos(el_b) * s_az * s_az, 0.0, 1.0);
    return rad2deg(2.0 * std::atan2(std::sqrt(h), std::sqrt(1.0 - h)));
}

SpatialErrorReport compare_tracks(const DoaTrack& reference, const DoaTrack& candidate) {
    if (reference.frames.size() != candidate.frames.size())
        throw Error("evaluate: tracks have different frame counts");
    std::vector<double> az_ref, az_cand, el_ref, el_cand;
    double angle_sum = 0.0;
    for (std::size_t f = 0; f < reference.frames.size(); ++f) {
        const auto& r = reference.frames[f].direction;
        const auto& c = candidate.frames[f].direction;
        if (!r || !c) continue;
        az_ref.push_back(r->azimuth_deg());
        az_cand.push_back(c->azimuth_deg());
        el_ref.push_back(r->elevation_deg());
        el_cand.push_back(c->elevation_deg());
        angle_sum += spatial_angle(*r, *c);
    }
    if (az_ref.empty()) throw Error("evaluate: no mutually valid frames");
    SpatialErrorReport report;
    report.frames_compared = az_ref.size();
    report.l1_azimuth_deg = circular_l1(az_ref, az_cand);
    report.l1_elevation_deg = linear_l1(el_ref, el_cand);
    report.mean_spatial_angle_deg = angle_sum / static_cast<double>(az_ref.size());
    report.valid_frame_fraction =
        static_cast<double>(az_ref.size()) / static_cast<double>(reference.frames.size());
    return report;
}

SpatialErrorReport evaluate_pair(const FoaSignal& reference, const FoaSignal& candidate,
                                 const DoaOptions& opts) {
    if (reference.sample_rate() != candidate.sample_rate())
        throw Error("evaluate: sample rates differ");
    if (reference.size() != candidate.size())
        throw Error("evaluate: durations differ (" + std::to_string(reference.size()) + " vs " +
                    std::to_string(candidate.size()) + " samples)");
    return compare_tracks(estimate_doa(reference, opts), estimate_doa(candidate, opts));
}

std::vector<std::vector<double>> stft_magnitude(std::span<const double> x, std::size_t n_fft,
                                                std::size_t hop, double eps) {
    if (n_fft < 2 || hop < 1) throw Error("STFT: invalid size or hop");
    const std::size_t pad = n_fft / 2;
    const std::size_t frames = 1 + x.size() / hop;
    std::vector<double> window(n_fft);
    for (std::size_t i = 0; i < n_fft; ++i)
        window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_fft));

    RealFft fft(n_fft);
    std::vector<std::vector<double>> mag(frames, std::vector<double>(fft.bins()));
    const auto n = static_cast<long>(x.size());
    for (std::size_t f = 0; f < frames; ++f) {
        auto in = fft.input();
        const long origin = static_cast<long>(f * hop) - static_cast<long>(pad);
        for (std::size_t i = 0; i < n_fft; ++i) {
            const long src = origin + static_cast<long>(i);
            in[i] = (src >= 0 && src < n) ? x[static_cast<std::size_t>(src)] * window[i] : 0.0;
        }
        fft.execute();
        for (std::size_t k = 0; k < fft.bins(); ++k) mag[f][k] = std::sqrt(std::max(fft.power(k), eps));
    }
    return mag;
}

MrstftTerms mrstft_channel(std::span<const double> reference, std::span<const double> candidate,
                           const MrstftOptions& opts) {
    if (reference.size() != candidate.size()) throw Error("MRSTFT: length mismatch");
    if (opts.fft_sizes.empty() || opts.hop_divisor == 0) throw Error("MRSTFT: invalid options");
    MrstftTerms terms;
    for (std::size_t n_fft : opts.fft_sizes) {
        const std::size_t hop = std::max<std::size_t>(1, n_fft / opts.hop_divisor);
        const auto ref = stft_magnitude(reference, n_fft, hop, opts.eps);
        const auto cand = stft_magnitude(candidate, n_fft, hop, opts.eps);
        double diff_sq = 0.0, ref_sq = 0.0, log_l1 = 0.0;
        std::size_t cells = 0;
        for (std::size_t f = 0; f < ref.size(); ++f) {
            for (std::size_t k = 0; k < ref[f].size(); ++k) {
                const double d = ref[f][k] - cand[f][k];
                diff_sq += d * d;
                ref_sq += ref[f][k] * ref[f][k];
                log_l1 += std::abs(std::log(ref[f][k]) - std::log(cand[f][k]));
                ++cells;
            }
        }
        terms.spectral_convergence += std::sqrt(diff_sq) / std::sqrt(ref_sq);
        terms.log_magnitude += log_l1 / static_cast<double>(cells);
    }
    return terms;
}

MrstftReport mrstft_distance(const FoaSignal& reference, const FoaSignal& candidate,
                             const MrstftOptions& opts) {
    if (reference.size() != candidate.size()) throw Error("MRSTFT: length mismatch");
    MrstftReport report;
    double total = 0.0;
    for (std::size_t c = 0; c < 4; ++c) {
        report.channels[c] = mrstft_channel(reference.channel(c), candidate.channel(c), opts);
        total += report.channels[c].total();
    }
    report.mean = total / 4.0;
    return report;
}

}  // namespace ambio
