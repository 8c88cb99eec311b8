#pragma once

#include "scarforge/dataset_io.hpp"
#include "scarforge/preprocess.hpp"
#include "scarforge/scar_synth.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace scarforge {

/// Loads a record's image and mask and runs preprocess -> normalize_orientation
/// (rotation about the LV centroid of the preprocessed mask).
PreparedSlice prepare_record(const DatasetRecord& record);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. If any call throws,
/// the exception from the lowest failing index is rethrown after all workers
/// finish.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

struct SynthRunOptions {
    unsigned jobs = 1;
    /// Called once per record that was left unaugmented by an empty candidate.
    std::function<void(const std::string&)> on_warning;
};

/// Output file layout for record i inside a dataset directory.
std::string image_relpath(std::uint64_t index);
std::string mask_relpath(std::uint64_t index);
std::string field_relpath(std::uint64_t index);

/// Full augmentation run: prepares every record, augments LGE-negative ones
/// with probability cfg.lambda, writes images, masks, scar fields and the
/// manifest under `out_dir`. LGE-positive records pass through with the
/// suffixed positive inference query as caption.
std::vector<AugmentedRecord> synthesize_dataset(const std::vector<DatasetRecord>& records,
                                                const SynthConfig& cfg, const fs::path& out_dir,
                                                const SynthRunOptions& options = {});

/// Regenerates a dataset from an emitted manifest's provenance, without sampling.
std::vector<AugmentedRecord> replay_dataset(const std::vector<AugmentedRecord>& manifest,
                                            const fs::path& out_dir, unsigned jobs = 1);

/// Rebuilds the output image of one emitted record from its source files.
GrayImage regenerate_image(const AugmentedRecord& record);

struct ValidationReport {
    std::size_t records = 0;
    std::size_t synthetic = 0;
    std::size_t replay_checked = 0;
    std::vector<std::string> violations;
    std::string dataset_hash;

    bool ok() const { return violations.empty(); }
};

/// Re-checks every emitted record: caption grammar and label consistency,
/// scar containment (support(M) within the myocardium, M in [0, 1],
/// max(M) in {0, 1}, center inside the recomputed candidate), and, when the
/// source files are reachable, byte-identical regeneration.
ValidationReport validate_dataset(const fs::path& out_dir);

/// Generates an input manifest of annulus phantoms (F32 images, PNG masks).
struct PhantomSetOptions {
    std::size_t count = 50;
    std::uint64_t seed = 1;
    int size = 192;
    double spacing_mm = 1.5;
    std::size_t positive_every = 0; // every k-th record LGE-positive; 0 = none
};
fs::path write_phantom_set(const fs::path& dir, const PhantomSetOptions& options);

} // namespace scarforge
