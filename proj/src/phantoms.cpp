#include "scarforge/phantoms.hpp"

#include "scarforge/errors.hpp"

#include <cmath>
#include <numbers>

namespace scarforge {

namespace {

double gaussian(UniformSource& rng) {
    const double u1 = 1.0 - rng.next_unit(); // (0, 1]
    const double u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace

Phantom make_annulus(Point2 center, double r_inner, double r_outer, GridSize grid,
                     double base_intensity, double noise_sigma, UniformSource& rng,
                     Spacing spacing) {
    if (!(r_inner > 0.0) || !(r_outer > r_inner))
        fail(ErrorKind::Argument, "annulus radii must satisfy 0 < r_inner < r_outer");
    if (noise_sigma < 0.0)
        fail(ErrorKind::Argument, "noise sigma must be >= 0");

    Phantom ph{GrayImage(grid, spacing), LabeledMask(grid)};
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            const double r = std::hypot(x - center.x, y - center.y);
            double v;
            if (r < r_inner) {
                v = 0.45 * base_intensity;
            } else if (r <= r_outer) {
                v = base_intensity;
                ph.myo.at(x, y) = 1;
            } else {
                v = 0.15 * base_intensity;
            }
            if (noise_sigma > 0.0)
                v += noise_sigma * gaussian(rng);
            ph.image.at(x, y) = static_cast<float>(v);
        }
    }
    return ph;
}

RvipPair place_rvips(Point2 center, double radius, double anterior_angle, double separation,
                     int sweep_sign) {
    const double sign = sweep_sign >= 0 ? 1.0 : -1.0;
    const double inferior_angle = anterior_angle + sign * separation;
    return {{center.x + radius * std::cos(anterior_angle), center.y + radius * std::sin(anterior_angle)},
            {center.x + radius * std::cos(inferior_angle), center.y + radius * std::sin(inferior_angle)}};
}

} // namespace scarforge
