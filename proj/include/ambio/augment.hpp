#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ambio/preprocess.hpp"
#include "ambio/record.hpp"

namespace ambio {

/// One line of the input manifest: {"source_id", "audio_path", "caption"}.
/// Relative audio paths resolve against the manifest's directory.
struct ManifestEntry {
    std::string source_id;
    std::string audio_path;
    std::string caption;
};

std::vector<ManifestEntry> read_input_manifest(const std::string& path);

struct AugmentOptions {
    std::uint64_t seed = 0;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned jobs = 0;
    PreprocessOptions preprocess;
};

struct ItemFailure {
    std::string source_id;
    std::string message;
};

struct AugmentReport {
    std::vector<SpatialSampleRecord> records;  // input order, static then dynamic
    std::vector<ItemFailure> failures;         // input order
};

/// Generated audio and record for one source, before anything is written.
struct AugmentedPair {
    SpatialSampleRecord static_record;
    FoaSignal static_audio;
    SpatialSampleRecord dynamic_record;
    FoaSignal dynamic_audio;
};

/// Builds the static and dynamic samples for one preprocessed source. Each
/// sample draws from its own stream seeded by derive_seed(seed, id, kind).
AugmentedPair augment_source(const std::string& source_id, const std::string& caption,
                             const MonoSignal& preprocessed, std::uint64_t corpus_seed);

/// Writes `<id>.static.wav/.json` and `<id>.dynamic.wav/.json` per source,
/// plus `manifest.jsonl` (one record per line, input order) and
/// `errors.jsonl` (one line per failed item). Item failures never abort
/// the batch.
AugmentReport augment_corpus(const std::string& manifest_in, const std::string& out_dir,
                             const AugmentOptions& opts);

}  // namespace ambio
