#pragma once

#include "scarforge/anatomy.hpp"
#include "scarforge/phantoms.hpp"
#include "scarforge/scar_synth.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace fixture {

using namespace scarforge;

/// A slice that already went through preprocessing and orientation: an
/// annulus with the RVIP pair vertically aligned, anterior on top, and the
/// septum on the left (`tilt` radians above/below the horizontal).
inline PreparedSlice oriented_slice(Point2 center, double r_in, double r_out, SliceLevel level,
                                    double tilt = 0.6, std::uint64_t noise_seed = 0, int size = 224) {
    Rng rng(noise_seed);
    Phantom ph = make_annulus(center, r_in, r_out, {size, size}, 0.3, noise_seed ? 0.01 : 0.0, rng);
    // A bright ring outside the heart sets max(I), as fat and chest wall do.
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double r = std::hypot(x - center.x, y - center.y);
            if (r >= r_out + 20 && r <= r_out + 24)
                ph.image.at(x, y) = 1.0f;
        }
    const double a = -std::numbers::pi / 2 - tilt;
    PreparedSlice s;
    s.image = std::move(ph.image);
    s.myo = std::move(ph.myo);
    s.rvips = {{center.x + r_out * std::cos(a), center.y + r_out * std::sin(a)},
               {center.x + r_out * std::cos(a), center.y - r_out * std::sin(a)}};
    s.level = level;
    return s;
}

struct SpanMeasurement {
    double fraction = 0.0;     // share of the wall crossed at half maximum
    std::size_t layers_hit = 0; // distinct layers among the covered samples
};

/// Walks the ray from the LV center through the scar center across the
/// wall and measures what share of its myocardial samples has M >= 0.5.
inline SpanMeasurement transmural_span(const GrayImage& field, const LabeledMask& myo,
                                       const LabeledMask& layers, Point2 lv, Point2 scar_center) {
    const double dx = scar_center.x - lv.x;
    const double dy = scar_center.y - lv.y;
    const double len = std::hypot(dx, dy);
    SpanMeasurement m;
    if (len == 0)
        return m;
    const double ux = dx / len, uy = dy / len;
    std::size_t wall = 0, covered = 0;
    std::set<int> hit;
    for (double t = 0; t < 2 * len + 400; t += 0.25) {
        const int x = static_cast<int>(std::lround(lv.x + t * ux));
        const int y = static_cast<int>(std::lround(lv.y + t * uy));
        if (!myo.size().contains(x, y))
            break;
        if (!myo.at(x, y))
            continue;
        ++wall;
        if (field.at(x, y) >= 0.5f) {
            ++covered;
            hit.insert(layers.at(x, y));
        }
    }
    if (wall)
        m.fraction = static_cast<double>(covered) / static_cast<double>(wall);
    m.layers_hit = hit.size();
    return m;
}

} // namespace fixture
