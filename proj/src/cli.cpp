#include "ambio/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ambio/augment.hpp"
#include "ambio/conditioner.hpp"
#include "ambio/error.hpp"
#include "ambio/metrics.hpp"
#include "ambio/wav.hpp"

namespace ambio {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::shared_ptr<spdlog::logger> logger() {
    static const auto log = [] {
        auto l = spdlog::stderr_color_mt("ambio");
        l->set_level(spdlog::level::warn);
        if (const char* env = std::getenv("AMBIO_LOG"); env != nullptr && *env != '\0')
            l->set_level(spdlog::level::from_str(env));
        return l;
    }();
    return log;
}

void emit_error(std::ostream& err, std::string_view kind, std::string_view message) {
    std::string flat(message);
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    err << json{{"error", kind}, {"message", flat}}.dump() << '\n';
}

unsigned resolve_jobs(unsigned jobs) {
    return jobs != 0 ? jobs : std::max(1U, std::thread::hardware_concurrency());
}

// Shared DoA framing flags.
struct FramingFlags {
    std::size_t frame_len = 512;
    std::size_t hop = 256;
    bool per_sample = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--frame-len", frame_len, "Analysis frame length in samples")
            ->check(CLI::PositiveNumber);
        cmd.add_option("--hop", hop, "Frame hop in samples")->check(CLI::PositiveNumber);
        cmd.add_flag("--per-sample", per_sample, "One estimate per sample instead of framed");
    }
    DoaOptions options() const {
        return per_sample ? DoaOptions::per_sample() : DoaOptions{frame_len, hop, 1e-6};
    }
};

json doa_to_json(const DoaTrack& track) {
    json frames = json::array();
    for (const auto& f : track.frames) {
        json jf{{"time_s", f.time_s}, {"energy", f.energy}, {"valid", f.valid()}};
        if (f.direction) {
            jf["azimuth_deg"] = f.direction->azimuth_deg();
            jf["elevation_deg"] = f.direction->elevation_deg();
        }
        frames.push_back(std::move(jf));
    }
    return {{"sample_rate", track.sample_rate},
            {"frame_len", track.frame_len},
            {"hop", track.hop},
            {"valid_frames", track.valid_count()},
            {"frames", std::move(frames)}};
}

void doa_to_csv(const DoaTrack& track, std::ostream& out) {
    out << "time_s,energy,valid,azimuth_deg,elevation_deg\n";
    out << std::setprecision(17);
    for (const auto& f : track.frames) {
        out << f.time_s << ',' << f.energy << ',' << (f.valid() ? 1 : 0) << ',';
        if (f.direction) out << f.direction->azimuth_deg() << ',' << f.direction->elevation_deg();
        else out << ',';
        out << '\n';
    }
}

json report_to_json(const SpatialErrorReport& r) {
    return {{"l1_azimuth_deg", r.l1_azimuth_deg},
            {"l1_elevation_deg", r.l1_elevation_deg},
            {"mean_spatial_angle_deg", r.mean_spatial_angle_deg},
            {"valid_frame_fraction", r.valid_frame_fraction},
            {"frames_compared", r.frames_compared}};
}

json mrstft_to_json(const MrstftReport& r) {
    static constexpr const char* names[] = {"w", "x", "y", "z"};
    json j;
    for (std::size_t c = 0; c < 4; ++c)
        j[names[c]] = {{"total", r.channels[c].total()},
                       {"spectral_convergence", r.channels[c].spectral_convergence},
                       {"log_magnitude", r.channels[c].log_magnitude}};
    j["mean"] = r.mean;
    return j;
}

// ---- encode ---------------------------------------------------------------

struct EncodeArgs {
    std::string input;
    std::string output;
    double az_start = 0.0;
    std::optional<double> az_end;
    double el_start = 0.0;
    std::optional<double> el_end;
    bool clockwise = false;
    std::optional<double> move_start;
    std::optional<double> move_end;
    std::string caption = "a sound";
    std::string source_id;
    bool preprocess = false;
};

int run_encode(const EncodeArgs& a, std::ostream& out) {
    const bool az_moves = a.az_end && signed_azimuth_delta(a.az_start, *a.az_end, a.clockwise) != 0.0;
    const bool el_moves = a.el_end && *a.el_end != a.el_start;
    const bool moving = az_moves || el_moves;
    if (!moving && (a.move_start || a.move_end))
        throw UsageError("--move-start/--move-end given but --az-end/--el-end describe no movement");
    if (a.clockwise && !az_moves) throw UsageError("--clockwise given but azimuth does not change");

    MonoSignal mono = read_mono(a.input);
    if (a.preprocess) mono = ambio::preprocess(mono);
    const double clip = mono.duration_s();
    const SphericalPosition start(a.az_start, a.el_start);

    const Trajectory traj = [&] {
        if (!moving) return Trajectory::stationary(start, clip);
        const SphericalPosition end(a.az_end.value_or(a.az_start), a.el_end.value_or(a.el_start));
        return Trajectory(start, end, a.clockwise, a.move_start.value_or(0.0),
                          a.move_end.value_or(clip), clip);
    }();

    const FoaSignal foa = moving ? encode_moving(mono, traj) : encode_static(mono, start);
    write_foa(foa, a.output);

    const std::string id = a.source_id.empty() ? fs::path(a.input).stem().string() : a.source_id;
    SpatialSampleRecord rec =
        make_record(id, moving ? SampleKind::dynamic_source : SampleKind::static_source, traj,
                    a.caption, 0, mono.sample_rate());
    rec.audio_file = fs::path(a.output).filename().string();
    const std::string sidecar = fs::path(a.output).replace_extension(".json").string();
    write_record(rec, sidecar);
    logger()->info("encoded {} -> {}", a.input, a.output);
    out << json{{"audio", a.output}, {"record", sidecar}, {"kind", to_string(rec.kind)}}.dump() << '\n';
    return 0;
}

// ---- augment --------------------------------------------------------------

int run_augment(const std::string& manifest, const std::string& out_dir, std::uint64_t seed,
                unsigned jobs, std::ostream& out) {
    AugmentOptions opts;
    opts.seed = seed;
    opts.jobs = resolve_jobs(jobs);
    const AugmentReport report = augment_corpus(manifest, out_dir, opts);
    for (const auto& f : report.failures) logger()->warn("item {} failed: {}", f.source_id, f.message);
    out << json{{"records", report.records.size()},
                {"failures", report.failures.size()},
                {"manifest", (fs::path(out_dir) / "manifest.jsonl").string()}}
               .dump()
        << '\n';
    return 0;
}

// ---- analyze --------------------------------------------------------------

int run_analyze(const std::string& input, const FramingFlags& framing, const std::string& order,
                const std::string& format, const std::string& output, std::ostream& out) {
    const FoaSignal foa = read_foa(input, parse_channel_order(order));
    const DoaTrack track = estimate_doa(foa, framing.options());
    std::ofstream file;
    std::ostream* sink = &out;
    if (!output.empty()) {
        file.open(output, std::ios::binary | std::ios::trunc);
        if (!file) throw Error("cannot open for writing: " + output);
        sink = &file;
    }
    if (format == "csv") doa_to_csv(track, *sink);
    else *sink << doa_to_json(track).dump() << '\n';
    return 0;
}

// ---- evaluate -------------------------------------------------------------

bool is_manifest(const std::string& path) {
    const auto ext = fs::path(path).extension().string();
    return ext == ".jsonl" || ext == ".ndjson";
}

std::vector<std::string> manifest_audio_paths(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest: " + path);
    const fs::path base = fs::path(path).parent_path();
    std::vector<std::string> paths;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const json j = json::parse(line);
        std::string p = j.contains("audio_file") ? j["audio_file"].get<std::string>()
                                                 : j.at("audio_path").get<std::string>();
        if (fs::path(p).is_relative()) p = (base / p).string();
        paths.push_back(std::move(p));
    }
    return paths;
}

json evaluate_files(const std::string& ref, const std::string& cand, const DoaOptions& doa,
                    const std::string& order, bool with_mrstft) {
    const ChannelOrder co = parse_channel_order(order);
    const FoaSignal r = read_foa(ref, co);
    const FoaSignal c = read_foa(cand, co);
    json j{{"ref", ref}, {"cand", cand}};
    j.update(report_to_json(evaluate_pair(r, c, doa)));
    if (with_mrstft) j["mrstft"] = mrstft_to_json(mrstft_distance(r, c));
    return j;
}

int run_evaluate(const std::string& ref, const std::string& cand, const FramingFlags& framing,
                 const std::string& order, bool with_mrstft, unsigned jobs, std::ostream& out) {
    const DoaOptions doa = framing.options();
    if (is_manifest(ref) != is_manifest(cand))
        throw UsageError("--ref and --cand must both be WAV files or both be manifests");
    if (!is_manifest(ref)) {
        out << evaluate_files(ref, cand, doa, order, with_mrstft).dump() << '\n';
        return 0;
    }

    const auto refs = manifest_audio_paths(ref);
    const auto cands = manifest_audio_paths(cand);
    if (refs.size() != cands.size())
        throw Error("manifests list different numbers of items (" + std::to_string(refs.size()) +
                    " vs " + std::to_string(cands.size()) + ")");

    std::vector<json> rows(refs.size());
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        const unsigned n = std::min<unsigned>(resolve_jobs(jobs), std::max<std::size_t>(1, refs.size()));
        for (unsigned w = 0; w < n; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < refs.size(); i = next++) {
                    try {
                        rows[i] = evaluate_files(refs[i], cands[i], doa, order, with_mrstft);
                    } catch (const std::exception& e) {
                        rows[i] = json{{"ref", refs[i]}, {"cand", cands[i]}, {"error", e.what()}};
                    }
                }
            });
    }

    double az = 0.0, el = 0.0, angle = 0.0, mr = 0.0;
    std::size_t ok = 0;
    for (const auto& row : rows) {
        out << row.dump() << '\n';
        if (row.contains("error")) {
            logger()->warn("pair {} failed: {}", row["ref"].get<std::string>(),
                           row["error"].get<std::string>());
            continue;
        }
        ++ok;
        az += row["l1_azimuth_deg"].get<double>();
        el += row["l1_elevation_deg"].get<double>();
        angle += row["mean_spatial_angle_deg"].get<double>();
        if (with_mrstft) mr += row["mrstft"]["mean"].get<double>();
    }
    json summary{{"pairs", rows.size()}, {"evaluated", ok}, {"failures", rows.size() - ok}};
    if (ok > 0) {
        const double n = static_cast<double>(ok);
        summary["l1_azimuth_deg"] = az / n;
        summary["l1_elevation_deg"] = el / n;
        summary["mean_spatial_angle_deg"] = angle / n;
        if (with_mrstft) summary["mrstft_mean"] = mr / n;
    }
    out << json{{"summary", summary}}.dump() << '\n';
    return 0;
}

// ---- condition ------------------------------------------------------------

int run_condition(const std::string& record_path, std::size_t az_bins, std::size_t el_bins,
                  std::size_t frames, const std::string& output, std::ostream& out) {
    const SpatialSampleRecord rec = read_record(record_path);
    const Trajectory traj = rec.trajectory();
    const ConditioningTensor tensor = build_conditioning_tensor(traj, az_bins, el_bins, frames);
    const std::string path =
        output.empty() ? fs::path(record_path).replace_extension(".smx").string() : output;
    write_smx(tensor, temporal_conditions(traj), path);
    out << json{{"smx", path}, {"shape", {tensor.matrix.rows(), tensor.matrix.frames()}}}.dump() << '\n';
    return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ambio: first-order Ambisonics encoding, augmentation and spatial evaluation"};
    app.require_subcommand(1);

    EncodeArgs enc;
    auto* encode = app.add_subcommand("encode", "Encode a mono WAV into a 4-channel FOA WAV");
    encode->add_option("input", enc.input, "Mono or stereo WAV")->required()->check(CLI::ExistingFile);
    encode->add_option("-o,--output", enc.output, "Output FOA WAV")->required();
    encode->add_option("--az-start", enc.az_start, "Start azimuth (deg, ccw from front)");
    encode->add_option("--az-end", enc.az_end, "End azimuth (deg)");
    encode->add_option("--el-start", enc.el_start, "Start elevation (deg)");
    encode->add_option("--el-end", enc.el_end, "End elevation (deg)");
    encode->add_flag("--clockwise", enc.clockwise, "Move azimuth clockwise (decreasing)");
    encode->add_option("--move-start", enc.move_start, "Movement window start (s)");
    encode->add_option("--move-end", enc.move_end, "Movement window end (s)");
    encode->add_option("--caption", enc.caption, "Original caption for the sidecar record");
    encode->add_option("--source-id", enc.source_id, "Source id (default: input file stem)");
    encode->add_flag("--preprocess", enc.preprocess,
                     "Resample to 16 kHz, trim silence and loop/truncate to 10 s first");

    std::string manifest, out_dir;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
    auto* augment = app.add_subcommand("augment", "Build a static + dynamic FOA corpus from a manifest");
    augment->add_option("--manifest", manifest, "Input JSON-lines manifest")->required();
    augment->add_option("--out-dir", out_dir, "Output directory")->required();
    augment->add_option("--seed", seed, "Corpus seed");
    augment->add_option("--jobs", jobs, "Worker threads (default: all cores)");

    std::string analyze_in, order = "wxyz", format = "json", analyze_out;
    FramingFlags analyze_framing;
    auto* analyze = app.add_subcommand("analyze", "Estimate a direction-of-arrival track");
    analyze->add_option("input", analyze_in, "FOA WAV")->required();
    analyze_framing.attach(*analyze);
    analyze->add_option("--channel-order", order, "On-disk channel order")
        ->check(CLI::IsMember({"wxyz", "fuma", "acn"}));
    analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("-o,--output", analyze_out, "Write to file instead of stdout");

    std::string ref, cand;
    bool no_mrstft = false;
    FramingFlags eval_framing;
    auto* evaluate = app.add_subcommand("evaluate", "Compare reference and candidate FOA audio");
    evaluate->add_option("--ref", ref, "Reference WAV or JSON-lines manifest")->required();
    evaluate->add_option("--cand", cand, "Candidate WAV or JSON-lines manifest")->required();
    eval_framing.attach(*evaluate);
    evaluate->add_option("--channel-order", order, "On-disk channel order")
        ->check(CLI::IsMember({"wxyz", "fuma", "acn"}));
    evaluate->add_flag("--no-mrstft", no_mrstft, "Skip the multi-resolution STFT distance");
    evaluate->add_option("--jobs", jobs, "Worker threads for manifest mode");

    std::string record_path, smx_out;
    std::size_t az_bins = kDefaultAzimuthBins, el_bins = kDefaultElevationBins, frames = kDefaultFrames;
    auto* condition = app.add_subcommand("condition", "Write the position state matrix for a record");
    condition->add_option("record", record_path, "Sidecar .json record")->required();
    condition->add_option("--az-bins", az_bins, "Azimuth bins")->check(CLI::Range(2, 1 << 20));
    condition->add_option("--el-bins", el_bins, "Elevation bins")->check(CLI::Range(2, 1 << 20));
    condition->add_option("--frames", frames, "Time frames")->check(CLI::Range(1, 1 << 24));
    condition->add_option("-o,--output", smx_out, "Output .smx (default: record path with .smx)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what());
        return 2;
    }

    try {
        if (*encode) return run_encode(enc, out);
        if (*augment) return run_augment(manifest, out_dir, seed, jobs, out);
        if (*analyze) return run_analyze(analyze_in, analyze_framing, order, format, analyze_out, out);
        if (*evaluate) return run_evaluate(ref, cand, eval_framing, order, !no_mrstft, jobs, out);
        if (*condition) return run_condition(record_path, az_bins, el_bins, frames, smx_out, out);
    } catch (const UsageError& e) {
        emit_error(err, "usage", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(err, "runtime", e.what());
        return 1;
    }
    emit_error(err, "usage", "no subcommand");
    return 2;
}

}  // namespace ambio
