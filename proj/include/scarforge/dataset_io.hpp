#pragma once

#include "scarforge/anatomy.hpp"
#include "scarforge/captions.hpp"
#include "scarforge/orientation.hpp"
#include "scarforge/raster.hpp"
#include "scarforge/scar_synth.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace scarforge {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Image codecs
//
// PNG: 8- or 16-bit grayscale; intensities map to [0, 1] by dividing by the
//      maximum code value. save_image writes 16-bit with
//      code = round(clamp(v, 0, 1) * 65535).
// F32: ASCII header "F32 <width> <height> <sx> <sy>\n" followed by
//      width*height little-endian IEEE-754 floats, row-major. Lossless.

enum class ImageFormat { Png, F32 };

/// Loads by magic bytes. PNG files carry no spacing; they get `png_spacing`.
GrayImage load_image(const fs::path& path, Spacing png_spacing = {1.0, 1.0});
void save_image(const GrayImage& img, const fs::path& path, ImageFormat format);
/// Picks the format from the extension (.png -> PNG, anything else -> F32).
void save_image(const GrayImage& img, const fs::path& path);

/// Label rasters: PNG code values are the labels; F32 values must be
/// non-negative integers.
LabeledMask load_mask(const fs::path& path);
/// 8-bit PNG when every label fits, 16-bit otherwise.
void save_mask(const LabeledMask& mask, const fs::path& path);

std::vector<std::uint8_t> encode_f32(const GrayImage& img);
GrayImage decode_f32(std::span<const std::uint8_t> bytes, const std::string& origin = "<memory>");

// ---------------------------------------------------------------------------
// Records

struct DatasetRecord {
    std::string image_path;
    std::string myo_mask_path;
    Point2 rvip_anterior;
    Point2 rvip_inferior;
    Spacing spacing_mm;
    SliceLevel slice_level = SliceLevel::Mid;
    bool lge_negative = true;
    std::string patient_id;

    friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

struct ProvenanceRecord {
    Provenance scar;
    std::string config_digest;

    friend bool operator==(const ProvenanceRecord& a, const ProvenanceRecord& b) {
        return a.scar.spec == b.scar.spec && a.scar.params == b.scar.params &&
               a.scar.gate_draw == b.scar.gate_draw && a.scar.record_seed == b.scar.record_seed &&
               a.config_digest == b.config_digest;
    }
};

struct AugmentedRecord {
    std::uint64_t record_index = 0;
    std::string output_image_path; // relative to the dataset directory
    std::string myo_mask_path;     // processed mask, relative
    std::optional<std::string> scar_field_path; // M, relative; synthetic records only
    std::string caption;
    ClassLabel label = ClassLabel::Negative;
    bool synthetic = false;
    RvipPair rvips; // landmarks in the output grid
    std::optional<ProvenanceRecord> provenance;
    DatasetRecord source;

    friend bool operator==(const AugmentedRecord&, const AugmentedRecord&) = default;
};

nlohmann::json to_json(const DatasetRecord& r);
DatasetRecord dataset_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AugmentedRecord& r);
AugmentedRecord augmented_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SynthConfig& cfg);

/// Parses a JSON-lines manifest. Relative paths resolve against the
/// manifest's directory; every referenced file must exist. Blank lines are
/// skipped but still count toward line numbers in error messages.
std::vector<DatasetRecord> read_manifest(const fs::path& path);
void write_manifest(const std::vector<DatasetRecord>& records, const fs::path& path);

inline constexpr std::string_view kAugmentedManifestName = "manifest.jsonl";

std::vector<AugmentedRecord> read_augmented_manifest(const fs::path& path);
/// Writes `<out_dir>/manifest.jsonl`, one line per record, in the given order.
fs::path write_augmented(const std::vector<AugmentedRecord>& records, const fs::path& out_dir);

/// Hex SHA-256.
std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_hex(std::string_view text);
/// First 16 hex digits of the SHA-256 of the canonical JSON config.
std::string config_digest(const SynthConfig& cfg);

/// SHA-256 over the manifest bytes followed by every referenced file, in
/// manifest order.
std::string dataset_hash(const fs::path& out_dir);

std::vector<std::uint8_t> read_file_bytes(const fs::path& path);
void write_file_bytes(const fs::path& path, std::span<const std::uint8_t> bytes);

} // namespace scarforge
