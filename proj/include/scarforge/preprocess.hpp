#pragma once

#include "scarforge/orientation.hpp"
#include "scarforge/raster.hpp"

namespace scarforge {

struct PreprocessOptions {
    Spacing target_spacing{1.0, 1.0}; // mm per pixel after resampling
    int crop_size = 112;              // square crop around the LV centroid
    int upsample = 2;                 // crop_size * upsample = output size
    double cap_percentile = 98.0;
};

struct PreprocessOutput {
    GrayImage image;        // 224x224, intensities in [0, 1]
    LabeledMask myo_mask;   // same grid, nearest-neighbour through the chain
    RvipPair rvips;         // co-transformed landmarks
    AffineTransform chain;  // original pixel coords -> output pixel coords
};

/// Resample to 1 mm, crop 112x112 about the LV centroid (zero padded),
/// upsample 2x (bilinear), cap at the 98th percentile of the upsampled crop
/// and min-max normalise.
PreprocessOutput preprocess(const GrayImage& img, const LabeledMask& myo_mask, RvipPair rvips,
                            const PreprocessOptions& options = {});

/// Steps d-e alone: cap at the given percentile, then min-max normalise.
GrayImage cap_and_normalize(const GrayImage& img, double cap_percentile = 98.0);

} // namespace scarforge
