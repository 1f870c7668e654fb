#include "ambio/conditioner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <nlohmann/json.hpp>

#include "ambio/error.hpp"
#include "ambio/language.hpp"

namespace ambio {

using nlohmann::json;

std::string_view to_string(Axis a) { return a == Axis::azimuth ? "azimuth" : "elevation"; }

AxisRange axis_range(Axis a) {
    if (a == Axis::azimuth) return {-180.0, 180.0};
    return {-kElevationLimitDeg, kElevationLimitDeg};
}

StateMatrix::StateMatrix(std::size_t rows, std::size_t frames)
    : rows_(rows), frames_(frames), values_(rows * frames, 0) {}

std::size_t StateMatrix::occupied_row(std::size_t frame, std::size_t row_begin,
                                      std::size_t row_end) const {
    for (std::size_t r = row_begin; r < row_end; ++r)
        if (at(r, frame) != 0) return r;
    throw Error("state matrix column " + std::to_string(frame) + " has no occupied bin");
}

double frame_time(const Trajectory& traj, std::size_t frame, std::size_t frames) {
    return traj.clip_duration_s() * (static_cast<double>(frame) + 0.5) / static_cast<double>(frames);
}

std::size_t quantize(double value_deg, Axis axis, std::size_t bins) {
    const AxisRange r = axis_range(axis);
    const double width = (r.max_deg - r.min_deg) / static_cast<double>(bins);
    const double idx = std::floor((value_deg - r.min_deg) / width);
    if (idx <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(idx), bins - 1);
}

AxisMatrix build_state_matrix(const Trajectory& traj, Axis axis, std::size_t bins,
                              std::size_t frames) {
    if (bins < 2) throw Error("state matrix: need at least 2 bins");
    if (frames < 1) throw Error("state matrix: need at least 1 frame");
    const AxisRange r = axis_range(axis);
    StateMatrix m(bins, frames);
    for (std::size_t f = 0; f < frames; ++f) {
        const SphericalPosition pos = traj.position_at(frame_time(traj, f, frames));
        const double value = axis == Axis::azimuth ? pos.azimuth_deg() : pos.elevation_deg();
        m.set(quantize(value, axis, bins), f, 1);
    }
    return {std::move(m), axis, (r.max_deg - r.min_deg) / static_cast<double>(bins),
            static_cast<double>(frames) / traj.clip_duration_s()};
}

ConditioningTensor build_conditioning_tensor(const Trajectory& traj, std::size_t azimuth_bins,
                                             std::size_t elevation_bins, std::size_t frames) {
    const AxisMatrix az = build_state_matrix(traj, Axis::azimuth, azimuth_bins, frames);
    const AxisMatrix el = build_state_matrix(traj, Axis::elevation, elevation_bins, frames);
    StateMatrix joint(azimuth_bins + elevation_bins, frames);
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t r = 0; r < azimuth_bins; ++r) joint.set(r, f, az.matrix.at(r, f));
        for (std::size_t r = 0; r < elevation_bins; ++r)
            joint.set(azimuth_bins + r, f, el.matrix.at(r, f));
    }
    return {std::move(joint), azimuth_bins, elevation_bins, traj.clip_duration_s()};
}

TemporalConditions temporal_conditions(const Trajectory& traj) {
    if (traj.is_static()) return {0.0, 0.0};
    return {traj.move_start_s(), traj.move_end_s() - traj.move_start_s()};
}

void write_smx(const ConditioningTensor& tensor, const TemporalConditions& temporal,
               const std::string& path) {
    const AxisRange az = axis_range(Axis::azimuth);
    const AxisRange el = axis_range(Axis::elevation);
    const std::size_t frames = tensor.matrix.frames();
    json header;
    header["shape"] = {tensor.matrix.rows(), frames};
    header["axes"] = {"azimuth", "elevation"};
    header["rows_per_axis"] = {tensor.azimuth_bins, tensor.elevation_bins};
    header["bin_width_deg"] = {(az.max_deg - az.min_deg) / static_cast<double>(tensor.azimuth_bins),
                               (el.max_deg - el.min_deg) / static_cast<double>(tensor.elevation_bins)};
    header["frame_rate_hz"] = static_cast<double>(frames) / tensor.clip_duration_s;
    header["frame_times"] = "centres: (f + 0.5) / frame_rate_hz";
    header["clip_duration_s"] = tensor.clip_duration_s;
    header["ranges"] = {{az.min_deg, az.max_deg}, {el.min_deg, el.max_deg}};
    header["move_start_s"] = temporal.move_start_s;
    header["total_move_s"] = temporal.total_move_s;
    header["dtype"] = "float32-le";

    std::string body;
    body.reserve(tensor.matrix.values().size() * 4);
    for (std::uint8_t v : tensor.matrix.values()) {
        const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
        for (int i = 0; i < 4; ++i) body.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out << header.dump() << '\n';
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw Error("write failed: " + path);
}

SmxFile read_smx(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open .smx file: " + path);
    SmxFile f;
    if (!std::getline(in, f.header_json)) throw Error("missing .smx header: " + path);
    json header;
    try {
        header = json::parse(f.header_json);
        f.rows = header.at("shape").at(0).get<std::size_t>();
        f.frames = header.at("shape").at(1).get<std::size_t>();
    } catch (const json::exception& e) {
        throw Error("malformed .smx header in " + path + ": " + e.what());
    }
    const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (body.size() != f.rows * f.frames * 4)
        throw Error(".smx payload size does not match header shape: " + path);
    f.values.resize(f.rows * f.frames);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b)
            bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(body[4 * i + b])) << (8 * b);
        f.values[i] = std::bit_cast<float>(bits);
    }
    return f;
}

}  // namespace ambio
