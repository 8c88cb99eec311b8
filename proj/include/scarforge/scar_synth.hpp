#pragma once

#include "scarforge/anatomy.hpp"
#include "scarforge/captions.hpp"
#include "scarforge/orientation.hpp"
#include "scarforge/raster.hpp"
#include "scarforge/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace scarforge {

struct RhoRange {
    double min = 0.1;
    double max = 0.4;

    friend bool operator==(const RhoRange&, const RhoRange&) = default;
};

struct SynthConfig {
    double lambda = 0.7; // augmentation probability per LGE-negative slice
    // Radii bounds as fractions of local wall thickness, indexed by Extent.
    std::array<RhoRange, 4> rho{RhoRange{0.1, 0.4}, RhoRange{0.1, 0.4}, RhoRange{0.1, 0.4},
                                RhoRange{0.7, 1.0}};
    double s1 = 2.0; // sigma = u * s1 + s2 (pixels)
    double s2 = 2.0;
    double b1 = 0.8; // gamma ~ U[b1, b2]
    double b2 = 1.0;
    std::uint64_t master_seed = 0;

    const RhoRange& rho_for(Extent e) const { return rho[static_cast<std::size_t>(e)]; }
    RhoRange& rho_for(Extent e) { return rho[static_cast<std::size_t>(e)]; }

    /// Throws Argument on out-of-range values.
    void validate() const;

    friend bool operator==(const SynthConfig&, const SynthConfig&) = default;
};

/// Lower radius bound used in the published formula r_min = max(0.01, th * rho_min).
/// Radii here are floored at kRadiusFloorPx instead; the constant is kept for provenance.
inline constexpr double kPublishedRadiusFloor = 0.01;
inline constexpr double kRadiusFloorPx = 1.0;
inline constexpr int kMaxPlacementRetries = 5;

struct ScarParams {
    Point2 center;     // a candidate pixel
    double r1 = 1.0;   // radius along the major-axis direction
    double r2 = 1.0;
    double alpha = 0.0; // orientation of r1's axis from +x, [0, pi)
    double sigma = 0.0; // Gaussian smoothing (pixels)
    double gamma = 1.0; // brightness factor
    double thickness = 0.0; // wall thickness at `center` (pixels)
    std::uint64_t seed = 0; // per-record seed the draws came from

    friend bool operator==(const ScarParams&, const ScarParams&) = default;
};

/// Controller: choose location mode (base / axis / both, equiprobable), the
/// words, and the extent. Draws: mode, word(s), extent.
ScarSpec sample_scar_spec(UniformSource& rng, SliceLevel level);

/// Deterministic rendering of a scar field from concrete parameters:
/// ellipse & candidate -> Gaussian(sigma) -> x myocardium -> min-max to [0, 1].
GrayImage render_scar_field(const ScarParams& params, const LabeledMask& candidate,
                            const LabeledMask& myo, Spacing spacing = {1.0, 1.0});

struct ScarField {
    GrayImage field; // M
    ScarParams params;
};

/// Samples placement and shape (center, r1, r2, alpha, sigma; retried up to
/// kMaxPlacementRetries times if nothing survives) then gamma, and renders M.
ScarField synthesize_scar_field(UniformSource& rng, const LabeledMask& candidate,
                                const LabeledMask& myo, const SynthConfig& cfg, Extent extent,
                                Spacing spacing = {1.0, 1.0});

/// I * (1 - M) + gamma * max(I) * M; pixels with M == 0 are copied bit for bit.
GrayImage blend(const GrayImage& img, const GrayImage& field, double gamma);

/// A slice after preprocessing and orientation normalisation.
struct PreparedSlice {
    GrayImage image;
    LabeledMask myo; // binary
    RvipPair rvips;
    SliceLevel level = SliceLevel::Mid;
    bool lge_negative = true;
};

/// Segment map, layer map and their derived inputs for one prepared slice.
struct SliceAnatomy {
    Point2 lv_center;
    LabeledMask segments;
    LabeledMask layers;
    WallDepth depth;
};

SliceAnatomy analyze_slice(const PreparedSlice& slice);

struct Provenance {
    ScarSpec spec;
    ScarParams params;
    double gate_draw = 0.0;
    std::uint64_t record_seed = 0;
};

struct AugmentationResult {
    GrayImage image;
    Caption caption;
    std::optional<Provenance> provenance; // present iff a scar was added
    std::optional<GrayImage> field;       // M, present with provenance
    std::optional<std::string> warning;
};

/// Per-record augmentation with probability cfg.lambda. The record RNG is
/// Rng(record_seed(cfg.master_seed, record_index)) and its draws are consumed
/// in this order: gate, location mode, location word(s), extent, center,
/// r1, r2, alpha, sigma-uniform, gamma, caption noun.
/// Throws ContractViolation for LGE-positive slices.
AugmentationResult augment_record(const PreparedSlice& slice, const SynthConfig& cfg,
                                  std::uint64_t record_index);

/// Rebuilds a synthetic record from stored provenance without sampling.
struct ReplayResult {
    GrayImage image;
    GrayImage field;
};
ReplayResult replay_scar(const PreparedSlice& slice, const Provenance& provenance);

} // namespace scarforge
