#pragma once

#include "scarforge/orientation.hpp"
#include "scarforge/raster.hpp"
#include "scarforge/rng.hpp"

namespace scarforge {

struct Phantom {
    GrayImage image;
    LabeledMask myo; // 1 on the annulus
};

/// Annulus "heart": mask = r_inner <= |p - center| <= r_outer. The wall gets
/// `base_intensity`, the cavity 0.45x and the background 0.15x, plus optional
/// Gaussian noise (Box-Muller over `rng`).
Phantom make_annulus(Point2 center, double r_inner, double r_outer, GridSize grid,
                     double base_intensity, double noise_sigma, UniformSource& rng,
                     Spacing spacing = {1.0, 1.0});

/// Anterior RVIP at `anterior_angle` on the circle, inferior RVIP at
/// anterior_angle + sweep_sign * separation.
RvipPair place_rvips(Point2 center, double radius, double anterior_angle, double separation,
                     int sweep_sign = +1);

} // namespace scarforge
