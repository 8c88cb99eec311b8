#include "scarforge/orientation.hpp"

#include "scarforge/errors.hpp"

#include <cmath>
#include <numbers>

namespace scarforge {

double orientation_angle(Point2 anterior, Point2 inferior) {
    const double dx = inferior.x - anterior.x;
    const double dy = inferior.y - anterior.y;
    if (!std::isfinite(dx) || !std::isfinite(dy))
        fail(ErrorKind::DegenerateLandmarks, "RVIP coordinates are not finite");
    if (std::hypot(dx, dy) < 1e-6)
        fail(ErrorKind::DegenerateLandmarks, "anterior and inferior RVIP coincide");
    double theta = std::numbers::pi / 2.0 - std::atan2(dy, dx);
    if (theta > std::numbers::pi)
        theta -= 2.0 * std::numbers::pi;
    else if (theta <= -std::numbers::pi)
        theta += 2.0 * std::numbers::pi;
    return theta;
}

OrientedSlice normalize_orientation(const GrayImage& img, const std::vector<LabeledMask>& masks,
                                    RvipPair rvips, Point2 center) {
    double theta = orientation_angle(rvips.anterior, rvips.inferior);
    // An already-normalised pair comes back with a rounding-level angle;
    // treating it as zero makes a second pass an exact no-op.
    if (std::abs(theta) <= kAlignedAngleTolerance)
        theta = 0.0;
    for (const auto& m : masks)
        if (m.size() != img.size())
            fail(ErrorKind::Argument, "mask grid differs from image grid");

    OrientedSlice out;
    auto rotated = rotate_about(img, center, theta, Interp::Bilinear, 0.0f);
    out.image = std::move(rotated.image);
    out.transform = rotated.transform;
    out.masks.reserve(masks.size());
    for (const auto& m : masks)
        out.masks.push_back(rotate_about(m, center, theta, 0).mask);
    out.rvips = {out.transform.apply(rvips.anterior), out.transform.apply(rvips.inferior)};
    return out;
}

} // namespace scarforge
