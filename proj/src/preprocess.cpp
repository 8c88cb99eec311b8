#include "scarforge/preprocess.hpp"

#include "scarforge/errors.hpp"

#include <cmath>

namespace scarforge {

GrayImage cap_and_normalize(const GrayImage& img, double cap_percentile) {
    const auto cap = static_cast<float>(percentile(img, cap_percentile));
    return minmax_normalize(clamp_max(img, cap));
}

PreprocessOutput preprocess(const GrayImage& img, const LabeledMask& myo_mask, RvipPair rvips,
                            const PreprocessOptions& options) {
    if (myo_mask.size() != img.size())
        fail(ErrorKind::RejectedInput, "myocardium mask grid differs from image grid");
    if (myo_mask.count_nonzero() == 0)
        fail(ErrorKind::RejectedInput, "empty myocardium mask");
    for (Point2 p : {rvips.anterior, rvips.inferior})
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            fail(ErrorKind::RejectedInput, "RVIP landmark is not finite");

    // a) physical resampling
    auto resampled = resample(img, options.target_spacing, Interp::Bilinear);
    const AffineTransform& to_resampled = resampled.transform;

    // b) crop window centred on the rounded LV centroid
    const Point2 lv = to_resampled.apply(centroid(binarize(myo_mask), 1));
    const long cx = std::lround(lv.x);
    const long cy = std::lround(lv.y);
    if (!resampled.image.size().contains(static_cast<int>(cx), static_cast<int>(cy)))
        fail(ErrorKind::RejectedInput, "LV centroid falls outside the resampled image");
    const int half = options.crop_size / 2;
    const auto crop = AffineTransform::translation(static_cast<double>(half - cx),
                                                   static_cast<double>(half - cy));

    // c) upsample with pixel extents aligned
    const double k = options.upsample;
    const auto up = AffineTransform(k, 0.0, 0.5 * k - 0.5, 0.0, k, 0.5 * k - 0.5);
    const AffineTransform window = up.after(crop);

    const int out_side = options.crop_size * options.upsample;
    const GridSize out_size{out_side, out_side};
    const Spacing out_spacing{options.target_spacing.x / k, options.target_spacing.y / k};

    GrayImage windowed =
        warp(resampled.image, window, out_size, out_spacing, Interp::Bilinear, 0.0f, false);

    const AffineTransform chain = window.after(to_resampled);
    LabeledMask mask = warp(myo_mask, chain, out_size, 0);
    if (mask.count_nonzero() == 0)
        fail(ErrorKind::RejectedInput, "myocardium lost entirely by preprocessing");

    // d, e) cap and normalise over the output grid
    PreprocessOutput out;
    out.image = cap_and_normalize(windowed, options.cap_percentile);
    out.myo_mask = std::move(mask);
    out.rvips = {chain.apply(rvips.anterior), chain.apply(rvips.inferior)};
    out.chain = chain;
    return out;
}

} // namespace scarforge
