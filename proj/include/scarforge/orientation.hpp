#pragma once

#include "scarforge/raster.hpp"

#include <vector>

namespace scarforge {

struct RvipPair {
    Point2 anterior;
    Point2 inferior;

    friend bool operator==(const RvipPair&, const RvipPair&) = default;
};

/// Angle in (-pi, pi] that rotates (inferior - anterior) onto +y, i.e. puts
/// the anterior RVIP directly above the inferior one.
double orientation_angle(Point2 anterior, Point2 inferior);

struct OrientedSlice {
    GrayImage image;
    std::vector<LabeledMask> masks;
    RvipPair rvips;
    AffineTransform transform;
};

/// Angles this close to zero are treated as already aligned.
inline constexpr double kAlignedAngleTolerance = 1e-9;

/// Rotates image (bilinear, zero fill), masks (nearest) and landmarks (exact)
/// about `center` by orientation_angle(anterior, inferior). An angle within
/// kAlignedAngleTolerance of zero returns the inputs unchanged.
OrientedSlice normalize_orientation(const GrayImage& img, const std::vector<LabeledMask>& masks,
                                    RvipPair rvips, Point2 center);

} // namespace scarforge
