#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ambio/foa.hpp"

namespace ambio {

/// Per-sample acoustic intensity: W times each dipole channel.
struct IntensityVectors {
    std::vector<double> ix, iy, iz;
};

IntensityVectors intensity_vectors(const FoaSignal& foa);

struct DoaOptions {
    std::size_t frame_len = 512;
    std::size_t hop = 256;
    /// A frame is invalid when its mean W^2 is below gate_ratio times the
    /// loudest frame's mean W^2 (or when the whole signal is silent).
    double gate_ratio = 1e-6;

    /// One frame per sample.
    static DoaOptions per_sample() { return {1, 1, 1e-6}; }
};

struct DoaFrame {
    std::size_t start_sample = 0;
    double time_s = 0.0;  // frame centre
    double energy = 0.0;  // mean W^2 over the frame
    std::optional<SphericalPosition> direction;  // empty for gated frames

    bool valid() const { return direction.has_value(); }
};

struct DoaTrack {
    std::vector<DoaFrame> frames;
    std::size_t frame_len = 0;
    std::size_t hop = 0;
    int sample_rate = 0;

    std::size_t valid_count() const;
};

/// Sums intensity vectors over each frame, then
/// azimuth = atan2(sum Iy, sum Ix) and
/// elevation = atan2(sum Iz, hypot(sum Ix, sum Iy)).
/// Frames start at 0, hop, 2*hop, ... and must fit in the signal; a signal
/// shorter than one frame yields a single frame over all samples.
DoaTrack estimate_doa(const FoaSignal& foa, const DoaOptions& opts = {});

/// Mean over frames of the shortest angular distance, in [0, 180].
double circular_l1(std::span<const double> a_deg, std::span<const double> b_deg);

/// Mean absolute difference.
double linear_l1(std::span<const double> a_deg, std::span<const double> b_deg);

/// Great-circle angle between two directions via the haversine form, in degrees.
double spatial_angle(const SphericalPosition& a, const SphericalPosition& b);

struct SpatialErrorReport {
    double l1_azimuth_deg = 0.0;
    double l1_elevation_deg = 0.0;
    double mean_spatial_angle_deg = 0.0;
    double valid_frame_fraction = 0.0;  // mutually valid frames / all frames
    std::size_t frames_compared = 0;
};

/// Frame-wise comparison of two equally long signals over the frames that
/// are valid in both tracks.
SpatialErrorReport evaluate_pair(const FoaSignal& reference, const FoaSignal& candidate,
                                 const DoaOptions& opts = {});

/// Same comparison for tracks that were already estimated.
SpatialErrorReport compare_tracks(const DoaTrack& reference, const DoaTrack& candidate);

struct MrstftOptions {
    std::vector<std::size_t> fft_sizes{2048, 1024, 512};
    std::size_t hop_divisor = 4;
    /// Floor on squared magnitude before sqrt and log.
    double eps = 1e-8;
};

struct MrstftTerms {
    double spectral_convergence = 0.0;
    double log_magnitude = 0.0;

    double total() const { return spectral_convergence + log_magnitude; }
};

/// Sum over resolutions of the spectral-convergence and log-magnitude L1
/// terms for a single channel. Spectral convergence is normalized by the
/// reference, so only the log-magnitude term is symmetric.
MrstftTerms mrstft_channel(std::span<const double> reference, std::span<const double> candidate,
                           const MrstftOptions& opts = {});

struct MrstftReport {
    std::array<MrstftTerms, 4> channels;  // W, X, Y, Z
    double mean = 0.0;                    // equal 1/4 weighting of channel totals
};

MrstftReport mrstft_distance(const FoaSignal& reference, const FoaSignal& candidate,
                             const MrstftOptions& opts = {});

/// Magnitude spectrogram, frames x (n_fft/2 + 1), periodic Hann window,
/// zero padding of n_fft/2 on both ends. Magnitudes are floored at sqrt(eps).
std::vector<std::vector<double>> stft_magnitude(std::span<const double> x, std::size_t n_fft,
                                                std::size_t hop, double eps);

}  // namespace ambio
