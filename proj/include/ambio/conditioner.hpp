#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ambio/trajectory.hpp"

namespace ambio {

enum class Axis { azimuth, elevation };

std::string_view to_string(Axis a);

/// Angular range covered by an axis: azimuth (-180, 180], elevation
/// [-35, 35]. Bin 0 starts at the lower edge.
struct AxisRange {
    double min_deg;
    double max_deg;
};

AxisRange axis_range(Axis a);

/// Binned one-hot position-vs-time matrix, row-major (bins x frames).
class StateMatrix {
public:
    StateMatrix(std::size_t rows, std::size_t frames);

    std::size_t rows() const { return rows_; }
    std::size_t frames() const { return frames_; }

    std::uint8_t at(std::size_t row, std::size_t frame) const { return values_[row * frames_ + frame]; }
    void set(std::size_t row, std::size_t frame, std::uint8_t v) { values_[row * frames_ + frame] = v; }

    /// Row index of the first nonzero entry in a column within [row_begin, row_end).
    std::size_t occupied_row(std::size_t frame, std::size_t row_begin, std::size_t row_end) const;

    const std::vector<std::uint8_t>& values() const { return values_; }

    friend bool operator==(const StateMatrix&, const StateMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t frames_;
    std::vector<std::uint8_t> values_;
};

struct AxisMatrix {
    StateMatrix matrix;
    Axis axis;
    double bin_width_deg;
    double frame_rate_hz;
};

/// Centre time of frame f: (f + 0.5) * clip / frames.
double frame_time(const Trajectory& traj, std::size_t frame, std::size_t frames);

/// floor((value - axis_min) / bin_width), clamped to [0, bins - 1].
std::size_t quantize(double value_deg, Axis axis, std::size_t bins);

AxisMatrix build_state_matrix(const Trajectory& traj, Axis axis, std::size_t bins,
                              std::size_t frames);

struct ConditioningTensor {
    StateMatrix matrix;  // azimuth rows first, then elevation rows
    std::size_t azimuth_bins;
    std::size_t elevation_bins;
    double clip_duration_s;
};

ConditioningTensor build_conditioning_tensor(const Trajectory& traj, std::size_t azimuth_bins,
                                             std::size_t elevation_bins, std::size_t frames);

struct TemporalConditions {
    double move_start_s;
    double total_move_s;
};

/// Movement start and duration; (0, 0) for a stationary source.
TemporalConditions temporal_conditions(const Trajectory& traj);

inline constexpr std::size_t kDefaultAzimuthBins = 72;
inline constexpr std::size_t kDefaultElevationBins = 14;
inline constexpr std::size_t kDefaultFrames = 100;

/// `.smx` file: one UTF-8 JSON header line, '\n', then rows*frames
/// little-endian float32 values in row-major order.
void write_smx(const ConditioningTensor& tensor, const TemporalConditions& temporal,
               const std::string& path);

struct SmxFile {
    std::string header_json;
    std::size_t rows = 0;
    std::size_t frames = 0;
    std::vector<float> values;
};

SmxFile read_smx(const std::string& path);

}  // namespace ambio
