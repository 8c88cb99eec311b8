#include "scarforge/scar_synth.hpp"

#include "scarforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace scarforge {

void SynthConfig::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        fail(ErrorKind::Argument, "lambda must lie in [0, 1]");
    for (Extent e : kAllExtents) {
        const RhoRange& r = rho_for(e);
        if (!(r.min > 0.0 && r.min <= r.max && r.max <= 1.0))
            fail(ErrorKind::Argument, "rho range for " + std::string(to_string(e)) +
                                          " must satisfy 0 < min <= max <= 1");
    }
    if (!(s1 >= 0.0) || !(s2 >= 0.0))
        fail(ErrorKind::Argument, "s1 and s2 must be >= 0");
    if (!(b1 >= 0.0 && b1 <= b2) || !std::isfinite(b2))
        fail(ErrorKind::Argument, "brightness bounds must satisfy 0 <= b1 <= b2");
}

ScarSpec sample_scar_spec(UniformSource& rng, SliceLevel level) {
    constexpr WallBase kBases[] = {WallBase::Anterior, WallBase::Inferior, WallBase::Posterior};
    constexpr WallAxis kAxes[] = {WallAxis::Lateral, WallAxis::Septal};
    ScarSpec spec;
    spec.level = level;
    switch (rng.index(3)) {
    case 0:
        spec.location.base = kBases[rng.index(3)];
        break;
    case 1:
        spec.location.axis = kAxes[rng.index(2)];
        break;
    default:
        spec.location.base = kBases[rng.index(3)];
        spec.location.axis = kAxes[rng.index(2)];
        break;
    }
    spec.extent = kAllExtents[rng.index(4)];
    return spec;
}

GrayImage render_scar_field(const ScarParams& params, const LabeledMask& candidate,
                            const LabeledMask& myo, Spacing spacing) {
    if (candidate.size() != myo.size())
        fail(ErrorKind::Argument, "candidate and myocardium grids differ");
    const GridSize grid = myo.size();
    const LabeledMask ellipse =
        rasterize_ellipse(params.center, params.r1, params.r2, params.alpha, grid);

    GrayImage clipped(grid, spacing);
    for (std::size_t i = 0; i < grid.area(); ++i)
        if (ellipse.labels()[i] != 0 && candidate.labels()[i] != 0)
            clipped.pixels()[i] = 1.0f;

    GrayImage smooth = gaussian_smooth(clipped, params.sigma);
    for (std::size_t i = 0; i < grid.area(); ++i)
        if (myo.labels()[i] == 0)
            smooth.pixels()[i] = 0.0f;
    return minmax_normalize(smooth);
}

ScarField synthesize_scar_field(UniformSource& rng, const LabeledMask& candidate,
                                const LabeledMask& myo, const SynthConfig& cfg, Extent extent,
                                Spacing spacing) {
    std::vector<std::size_t> pixels;
    for (std::size_t i = 0; i < candidate.labels().size(); ++i)
        if (candidate.labels()[i] != 0)
            pixels.push_back(i);
    if (pixels.empty())
        fail(ErrorKind::EmptyCandidate, "candidate region is empty");

    const WallDepth depth = wall_depth(myo);
    const RhoRange rho = cfg.rho_for(extent);
    const int w = candidate.width();

    for (int attempt = 0; attempt < kMaxPlacementRetries; ++attempt) {
        ScarParams p;
        const std::size_t idx = pixels[rng.index(pixels.size())];
        p.center = {static_cast<double>(idx % static_cast<std::size_t>(w)),
                    static_cast<double>(idx / static_cast<std::size_t>(w))};
        p.thickness = thickness_at(myo, depth, p.center);
        const double r_min = std::max(kRadiusFloorPx, p.thickness * rho.min);
        const double r_max = std::max(kRadiusFloorPx, p.thickness * rho.max);
        p.r1 = rng.uniform(r_min, r_max);
        p.r2 = rng.uniform(r_min, r_max);
        p.alpha = rng.uniform(0.0, std::numbers::pi);
        p.sigma = rng.next_unit() * cfg.s1 + cfg.s2;

        GrayImage field = render_scar_field(p, candidate, myo, spacing);
        if (field.max_value() <= 0.0f)
            continue;
        p.gamma = rng.uniform(cfg.b1, cfg.b2);
        return {std::move(field), p};
    }
    fail(ErrorKind::EmptyCandidate, "no scar pixel survived after " +
                                        std::to_string(kMaxPlacementRetries) + " placements");
}

GrayImage blend(const GrayImage& img, const GrayImage& field, double gamma) {
    if (img.size() != field.size())
        fail(ErrorKind::Argument, "image and scar field grids differ");
    if (!std::isfinite(gamma))
        fail(ErrorKind::Argument, "gamma is not finite");
    for (float m : field.pixels())
        if (!(m >= 0.0f && m <= 1.0f))
            fail(ErrorKind::Argument, "scar field values must lie in [0, 1]");

    const double peak = gamma * static_cast<double>(img.max_value());
    GrayImage out = img;
    auto src = img.pixels();
    auto m = field.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (m[i] == 0.0f)
            continue;
        const double v = src[i] * (1.0 - m[i]) + peak * m[i];
        const double lo = std::min<double>(src[i], peak);
        const double hi = std::max<double>(src[i], peak);
        dst[i] = static_cast<float>(std::clamp(v, lo, hi));
    }
    return out;
}

SliceAnatomy analyze_slice(const PreparedSlice& slice) {
    SliceAnatomy a;
    a.lv_center = centroid(slice.myo, 1);
    a.segments = angular_segments(slice.myo, a.lv_center, slice.rvips.anterior,
                                  slice.rvips.inferior, slice.level);
    a.depth = wall_depth(slice.myo);
    a.layers = concentric_layers(slice.myo, a.depth);
    return a;
}

namespace {

LabeledMask candidate_for(const PreparedSlice& slice, const SliceAnatomy& anatomy,
                          const ScarSpec& spec) {
    return candidate_region(slice.myo, location_to_segments(spec.location, spec.level),
                            spec.extent, anatomy.segments, anatomy.layers);
}

} // namespace

AugmentationResult augment_record(const PreparedSlice& slice, const SynthConfig& cfg,
                                  std::uint64_t record_index) {
    if (!slice.lge_negative)
        fail(ErrorKind::ContractViolation, "synthetic scars are only added to LGE-negative slices");
    cfg.validate();

    const std::uint64_t seed = record_seed(cfg.master_seed, record_index);
    Rng rng(seed);

    AugmentationResult result;
    result.image = slice.image;
    result.caption = negative_caption(slice.level);

    const double gate = rng.next_unit();
    if (!(gate < cfg.lambda))
        return result;

    const ScarSpec spec = sample_scar_spec(rng, slice.level);
    try {
        const SliceAnatomy anatomy = analyze_slice(slice);
        const LabeledMask candidate = candidate_for(slice, anatomy, spec);
        ScarField scar =
            synthesize_scar_field(rng, candidate, slice.myo, cfg, spec.extent, slice.image.spacing());
        scar.params.seed = seed;
        result.image = blend(slice.image, scar.field, scar.params.gamma);
        result.caption = generate_positive_caption(spec, rng);
        result.provenance = Provenance{spec, scar.params, gate, seed};
        result.field = std::move(scar.field);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyCandidate)
            throw;
        result.warning = "record " + std::to_string(record_index) + " (" +
                         spec.location.token() + ", " + std::string(to_string(spec.extent)) +
                         ") left unaugmented: " + e.what();
    }
    return result;
}

ReplayResult replay_scar(const PreparedSlice& slice, const Provenance& provenance) {
    const SliceAnatomy anatomy = analyze_slice(slice);
    const LabeledMask candidate = candidate_for(slice, anatomy, provenance.spec);
    GrayImage field =
        render_scar_field(provenance.params, candidate, slice.myo, slice.image.spacing());
    GrayImage image = blend(slice.image, field, provenance.params.gamma);
    return {std::move(image), std::move(field)};
}

} // namespace scarforge
