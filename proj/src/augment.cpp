#include "ambio/augment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <thread>
#include <variant>

#include <nlohmann/json.hpp>

#include "ambio/error.hpp"
#include "ambio/sampling.hpp"
#include "ambio/wav.hpp"

namespace ambio {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void validate_source_id(const std::string& id) {
    if (id.empty()) throw Error("empty source_id");
    if (id == "." || id == ".." || id.find_first_of("/\\") != std::string::npos)
        throw Error("source_id is not a valid file stem: " + id);
}

struct ItemOutcome {
    std::variant<std::monostate, std::pair<SpatialSampleRecord, SpatialSampleRecord>, std::string>
        result;
};

}  // namespace

std::vector<ManifestEntry> read_input_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest: " + path);
    const fs::path base = fs::path(path).parent_path();
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json j = json::parse(line);
            ManifestEntry e{j.at("source_id").get<std::string>(), j.at("audio_path").get<std::string>(),
                            j.at("caption").get<std::string>()};
            if (fs::path(e.audio_path).is_relative()) e.audio_path = (base / e.audio_path).string();
            entries.push_back(std::move(e));
        } catch (const json::exception& ex) {
            throw Error("manifest " + path + " line " + std::to_string(line_no) + ": " + ex.what());
        }
    }
    return entries;
}

AugmentedPair augment_source(const std::string& source_id, const std::string& caption,
                             const MonoSignal& preprocessed, std::uint64_t corpus_seed) {
    const double clip = preprocessed.duration_s();
    const int rate = preprocessed.sample_rate();

    const std::uint64_t static_seed = derive_seed(corpus_seed, source_id, "static");
    Rng static_rng(static_seed);
    const Trajectory fixed = Trajectory::stationary(sample_static_params(static_rng), clip);

    const std::uint64_t dynamic_seed = derive_seed(corpus_seed, source_id, "dynamic");
    Rng dynamic_rng(dynamic_seed);
    const DynamicParams moving = sample_dynamic_params(dynamic_rng, clip);

    SpatialSampleRecord static_record =
        make_record(source_id, SampleKind::static_source, fixed, caption, static_seed, rate);
    static_record.audio_file = source_id + ".static.wav";
    SpatialSampleRecord dynamic_record = make_record(source_id, SampleKind::dynamic_source,
                                                     moving.trajectory, caption, dynamic_seed, rate);
    dynamic_record.audio_file = source_id + ".dynamic.wav";

    return {std::move(static_record), encode_static(preprocessed, fixed.start()),
            std::move(dynamic_record), encode_moving(preprocessed, moving.trajectory)};
}

AugmentReport augment_corpus(const std::string& manifest_in, const std::string& out_dir,
                             const AugmentOptions& opts) {
    const std::vector<ManifestEntry> entries = read_input_manifest(manifest_in);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir + ": " + ec.message());
    const fs::path out(out_dir);

    std::vector<ItemOutcome> outcomes(entries.size());
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (!seen.insert(entries[i].source_id).second)
                outcomes[i].result = std::string("duplicate source_id");
    }

    auto process = [&](std::size_t i) {
        if (std::holds_alternative<std::string>(outcomes[i].result)) return;
        const ManifestEntry& e = entries[i];
        try {
            validate_source_id(e.source_id);
            const MonoSignal source = read_mono(e.audio_path);
            const MonoSignal prepared = preprocess(source, opts.preprocess);
            AugmentedPair pair = augment_source(e.source_id, e.caption, prepared, opts.seed);
            write_foa(pair.static_audio, (out / pair.static_record.audio_file).string());
            write_record(pair.static_record, (out / (e.source_id + ".static.json")).string());
            write_foa(pair.dynamic_audio, (out / pair.dynamic_record.audio_file).string());
            write_record(pair.dynamic_record, (out / (e.source_id + ".dynamic.json")).string());
            outcomes[i].result = std::make_pair(std::move(pair.static_record),
                                                std::move(pair.dynamic_record));
        } catch (const std::exception& ex) {
            outcomes[i].result = std::string(ex.what());
        }
    };

    unsigned jobs = opts.jobs != 0 ? opts.jobs : std::max(1U, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, entries.size())));
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < entries.size(); i = next++) process(i);
            });
    }

    AugmentReport report;
    std::ofstream manifest(out / "manifest.jsonl", std::ios::binary | std::ios::trunc);
    std::ofstream errors(out / "errors.jsonl", std::ios::binary | std::ios::trunc);
    if (!manifest || !errors) throw Error("cannot write manifests in " + out_dir);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (auto* pair = std::get_if<std::pair<SpatialSampleRecord, SpatialSampleRecord>>(
                &outcomes[i].result)) {
            manifest << to_json(pair->first).dump() << '\n' << to_json(pair->second).dump() << '\n';
            report.records.push_back(std::move(pair->first));
            report.records.push_back(std::move(pair->second));
        } else if (auto* msg = std::get_if<std::string>(&outcomes[i].result)) {
            errors << json{{"source_id", entries[i].source_id}, {"error", *msg}}.dump() << '\n';
            report.failures.push_back({entries[i].source_id, *msg});
        }
    }
    if (!manifest || !errors) throw Error("write failed in " + out_dir);
    return report;
}

}  // namespace ambio
