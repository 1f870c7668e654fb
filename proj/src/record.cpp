#include "ambio/record.hpp"

#include <fstream>

#include "ambio/error.hpp"

namespace ambio {

using nlohmann::json;

Trajectory SpatialSampleRecord::trajectory() const {
    const SphericalPosition start(azimuth_start_deg, elevation_start_deg);
    if (kind == SampleKind::static_source) return Trajectory::stationary(start, clip_duration_s);
    if (!move_start_s || !move_end_s)
        throw Error("record " + source_id + ": dynamic record without movement window");
    return {start, SphericalPosition(azimuth_end_deg, elevation_end_deg), clockwise,
            *move_start_s, *move_end_s, clip_duration_s};
}

SpatialSampleRecord make_record(std::string source_id, SampleKind kind, const Trajectory& traj,
                                std::string original_caption, std::uint64_t rng_seed,
                                int sample_rate) {
    SpatialSampleRecord r;
    r.source_id = std::move(source_id);
    r.kind = kind;
    r.azimuth_start_deg = traj.start().azimuth_deg();
    r.azimuth_end_deg = traj.end().azimuth_deg();
    r.elevation_start_deg = traj.start().elevation_deg();
    r.elevation_end_deg = traj.end().elevation_deg();
    r.clip_duration_s = traj.clip_duration_s();
    r.sample_rate = sample_rate;
    r.rng_seed = rng_seed;
    if (kind == SampleKind::dynamic_source) {
        r.clockwise = traj.clockwise();
        r.move_start_s = traj.move_start_s();
        r.move_end_s = traj.move_end_s();
        r.speed_class = classify_speed(traj.move_end_s() - traj.move_start_s());
    }
    r.phrases = map_to_language(traj);
    r.spatial_caption = compose_caption(original_caption, r.phrases, kind);
    r.original_caption = std::move(original_caption);
    return r;
}

json to_json(const SpatialPhrases& p) {
    auto opt_word = [](const std::optional<ElevationWord>& w) -> json {
        return w ? json(to_string(*w)) : json(nullptr);
    };
    json j;
    j["start_direction"] = to_string(p.start_direction);
    j["end_direction"] = to_string(p.end_direction);
    j["start_elevation"] = opt_word(p.start_elevation);
    j["end_elevation"] = opt_word(p.end_elevation);
    j["speed"] = p.speed ? json(to_string(*p.speed)) : json(nullptr);
    j["elevation_motion"] = p.elevation_motion == ElevationMotion::rising    ? "rising"
                            : p.elevation_motion == ElevationMotion::falling ? "falling"
                                                                             : "none";
    j["azimuth_moves"] = p.azimuth_moves;
    j["clockwise"] = p.clockwise;
    return j;
}

SpatialPhrases phrases_from_json(const json& j) {
    auto opt_word = [](const json& v) -> std::optional<ElevationWord> {
        if (v.is_null()) return std::nullopt;
        const auto s = v.get<std::string>();
        if (s == "up") return ElevationWord::up;
        if (s == "down") return ElevationWord::down;
        throw Error("unknown elevation word: " + s);
    };
    SpatialPhrases p;
    p.start_direction = parse_direction(j.at("start_direction").get<std::string>());
    p.end_direction = parse_direction(j.at("end_direction").get<std::string>());
    p.start_elevation = opt_word(j.at("start_elevation"));
    p.end_elevation = opt_word(j.at("end_elevation"));
    if (!j.at("speed").is_null()) p.speed = parse_speed_class(j.at("speed").get<std::string>());
    const auto motion = j.at("elevation_motion").get<std::string>();
    p.elevation_motion = motion == "rising"    ? ElevationMotion::rising
                         : motion == "falling" ? ElevationMotion::falling
                                               : ElevationMotion::none;
    p.azimuth_moves = j.at("azimuth_moves").get<bool>();
    p.clockwise = j.at("clockwise").get<bool>();
    return p;
}

json to_json(const SpatialSampleRecord& r) {
    json j;
    j["source_id"] = r.source_id;
    j["kind"] = to_string(r.kind);
    j["azimuth_start_deg"] = r.azimuth_start_deg;
    j["azimuth_end_deg"] = r.azimuth_end_deg;
    j["elevation_start_deg"] = r.elevation_start_deg;
    j["elevation_end_deg"] = r.elevation_end_deg;
    j["clockwise"] = r.clockwise;
    j["speed_class"] = r.speed_class ? json(to_string(*r.speed_class)) : json("none");
    if (r.move_start_s) j["move_start_s"] = *r.move_start_s;
    if (r.move_end_s) j["move_end_s"] = *r.move_end_s;
    j["clip_duration_s"] = r.clip_duration_s;
    j["sample_rate"] = r.sample_rate;
    j["original_caption"] = r.original_caption;
    j["spatial_caption"] = r.spatial_caption;
    j["phrases"] = to_json(r.phrases);
    j["rng_seed"] = r.rng_seed;
    j["audio_file"] = r.audio_file;
    j["conventions"] = {{"channel_order", "W,X,Y,Z"},
                        {"azimuth", "counter-clockwise positive from front, +90 is left"},
                        {"clockwise", "decreasing azimuth"}};
    return j;
}

SpatialSampleRecord record_from_json(const json& j) {
    try {
        SpatialSampleRecord r;
        r.source_id = j.at("source_id").get<std::string>();
        r.kind = parse_sample_kind(j.at("kind").get<std::string>());
        r.azimuth_start_deg = j.at("azimuth_start_deg").get<double>();
        r.azimuth_end_deg = j.at("azimuth_end_deg").get<double>();
        r.elevation_start_deg = j.at("elevation_start_deg").get<double>();
        r.elevation_end_deg = j.at("elevation_end_deg").get<double>();
        r.clockwise = j.at("clockwise").get<bool>();
        const auto speed = j.at("speed_class").get<std::string>();
        if (speed != "none") r.speed_class = parse_speed_class(speed);
        if (j.contains("move_start_s")) r.move_start_s = j["move_start_s"].get<double>();
        if (j.contains("move_end_s")) r.move_end_s = j["move_end_s"].get<double>();
        r.clip_duration_s = j.value("clip_duration_s", 10.0);
        r.sample_rate = j.value("sample_rate", 16000);
        r.original_caption = j.at("original_caption").get<std::string>();
        r.spatial_caption = j.at("spatial_caption").get<std::string>();
        if (j.contains("phrases")) r.phrases = phrases_from_json(j["phrases"]);
        r.rng_seed = j.value("rng_seed", std::uint64_t{0});
        r.audio_file = j.value("audio_file", std::string{});
        return r;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed sample record: ") + e.what());
    }
}

SpatialSampleRecord read_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open record: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("cannot parse record " + path + ": " + e.what());
    }
    return record_from_json(j);
}

void write_record(const SpatialSampleRecord& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write record: " + path);
    out << to_json(r).dump(2) << '\n';
    if (!out) throw Error("write failed: " + path);
}

}  // namespace ambio
