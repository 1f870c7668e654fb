#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ambio/language.hpp"
#include "ambio/trajectory.hpp"

namespace ambio {

/// Metadata for one generated sample; serialized as the sidecar `.json`
/// and as one line of the output manifest.
///
/// Angles use the ccw-positive azimuth convention and "clockwise" means
/// decreasing azimuth. Audio channels are stored W, X, Y, Z.
struct SpatialSampleRecord {
    std::string source_id;
    SampleKind kind = SampleKind::static_source;
    double azimuth_start_deg = 0.0;
    double azimuth_end_deg = 0.0;
    double elevation_start_deg = 0.0;
    double elevation_end_deg = 0.0;
    bool clockwise = false;
    std::optional<SpeedClass> speed_class;  // none for static samples
    std::optional<double> move_start_s;     // absent for static samples
    std::optional<double> move_end_s;
    double clip_duration_s = 10.0;
    int sample_rate = 16000;
    std::string original_caption;
    std::string spatial_caption;
    SpatialPhrases phrases;
    std::uint64_t rng_seed = 0;
    std::string audio_file;  // relative to the record's directory

    /// Rebuilds the trajectory the record describes.
    Trajectory trajectory() const;

    friend bool operator==(const SpatialSampleRecord&, const SpatialSampleRecord&) = default;
};

/// Fills the geometric fields, phrases and spatial caption from a trajectory.
SpatialSampleRecord make_record(std::string source_id, SampleKind kind, const Trajectory& traj,
                                std::string original_caption, std::uint64_t rng_seed,
                                int sample_rate);

nlohmann::json to_json(const SpatialPhrases& p);
SpatialPhrases phrases_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpatialSampleRecord& r);
SpatialSampleRecord record_from_json(const nlohmann::json& j);

SpatialSampleRecord read_record(const std::string& path);
void write_record(const SpatialSampleRecord& r, const std::string& path);

}  // namespace ambio
