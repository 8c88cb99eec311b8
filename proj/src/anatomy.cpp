#include "scarforge/anatomy.hpp"

#include "scarforge/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace scarforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pi(double a) {
    // (-pi, pi]
    a = std::remainder(a, kTwoPi);
    if (a <= -std::numbers::pi)
        a += kTwoPi;
    return a;
}

std::string_view base_prefix(WallBase b) {
    switch (b) {
    case WallBase::Anterior: return "antero";
    case WallBase::Inferior: return "infero";
    case WallBase::Posterior: return "postero";
    }
    return "";
}

} // namespace

// ---------------------------------------------------------------------------
// Vocabulary

std::string_view to_string(SliceLevel level) noexcept {
    switch (level) {
    case SliceLevel::Basal: return "basal";
    case SliceLevel::Mid: return "mid";
    case SliceLevel::Apical: return "apical";
    }
    return "";
}

std::string_view to_string(WallBase base) noexcept {
    switch (base) {
    case WallBase::Anterior: return "anterior";
    case WallBase::Inferior: return "inferior";
    case WallBase::Posterior: return "posterior";
    }
    return "";
}

std::string_view to_string(WallAxis axis) noexcept {
    switch (axis) {
    case WallAxis::Lateral: return "lateral";
    case WallAxis::Septal: return "septal";
    }
    return "";
}

std::string_view to_string(Extent extent) noexcept {
    switch (extent) {
    case Extent::SubEndocardial: return "sub-endocardial";
    case Extent::MidMyocardial: return "mid-myocardial";
    case Extent::Epicardial: return "epicardial";
    case Extent::Transmural: return "transmural";
    }
    return "";
}

std::optional<SliceLevel> slice_level_from_string(std::string_view s) {
    for (SliceLevel l : kAllLevels)
        if (to_string(l) == s)
            return l;
    return std::nullopt;
}

std::optional<Extent> extent_from_string(std::string_view s) {
    for (Extent e : kAllExtents)
        if (to_string(e) == s)
            return e;
    return std::nullopt;
}

void WallLocation::validate() const {
    if (!base && !axis)
        fail(ErrorKind::Argument, "wall location needs a base word, an axis word, or both");
}

std::string WallLocation::token() const {
    validate();
    if (base && axis)
        return std::string(base_prefix(*base)) + std::string(to_string(*axis));
    if (base)
        return std::string(to_string(*base));
    return std::string(to_string(*axis));
}

std::optional<WallLocation> WallLocation::from_token(std::string_view token) {
    constexpr std::array bases{WallBase::Anterior, WallBase::Inferior, WallBase::Posterior};
    constexpr std::array axes{WallAxis::Lateral, WallAxis::Septal};
    for (WallBase b : bases) {
        if (token == to_string(b))
            return WallLocation{b, std::nullopt};
        for (WallAxis a : axes)
            if (token == WallLocation{b, a}.token())
                return WallLocation{b, a};
    }
    for (WallAxis a : axes)
        if (token == to_string(a))
            return WallLocation{std::nullopt, a};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Angular segmentation

int sector_count(SliceLevel level) noexcept {
    return level == SliceLevel::Apical ? 4 : 6;
}

LabeledMask::Label segment_for_sector(SliceLevel level, int sector) {
    const int n = sector_count(level);
    if (sector < 0 || sector >= n)
        fail(ErrorKind::Argument, "sector index out of range");
    // Sector 0 follows the anterior RVIP into the septum; the anterior
    // segment is the last sector of the sweep.
    switch (level) {
    case SliceLevel::Basal: return 1 + (sector + 1) % 6;
    case SliceLevel::Mid: return 7 + (sector + 1) % 6;
    case SliceLevel::Apical: return 13 + (sector + 1) % 4;
    }
    return 0;
}

int septal_sweep_sign(Point2 center, Point2 anterior, Point2 inferior) {
    constexpr double kMinSeparation = 1e-6;
    if (distance(center, anterior) < kMinSeparation || distance(center, inferior) < kMinSeparation)
        fail(ErrorKind::DegenerateLandmarks, "RVIP coincides with the LV center");
    const double phi_a = std::atan2(anterior.y - center.y, anterior.x - center.x);
    const double phi_i = std::atan2(inferior.y - center.y, inferior.x - center.x);
    const double delta = wrap_pi(phi_i - phi_a);
    if (std::abs(delta) < 1e-9)
        fail(ErrorKind::DegenerateLandmarks, "RVIPs lie on the same ray from the LV center");
    if (std::numbers::pi - std::abs(delta) < 1e-9)
        fail(ErrorKind::AmbiguousAnatomy,
             "inferior RVIP is diametrically opposite the anterior RVIP; septum side is ambiguous");
    return delta > 0.0 ? 1 : -1;
}

LabeledMask angular_segments(const LabeledMask& myo, Point2 center, Point2 anterior,
                             Point2 inferior, SliceLevel level) {
    if (myo.count_nonzero() == 0)
        fail(ErrorKind::RejectedInput, "empty myocardium mask");
    const int sign = septal_sweep_sign(center, anterior, inferior);
    const double phi_a = std::atan2(anterior.y - center.y, anterior.x - center.x);
    const int n = sector_count(level);
    const double width = kTwoPi / n;

    LabeledMask out(myo.size());
    for (int y = 0; y < myo.height(); ++y) {
        for (int x = 0; x < myo.width(); ++x) {
            if (myo.at(x, y) == 0)
                continue;
            const double dx = x - center.x;
            const double dy = y - center.y;
            double offset = 0.0;
            if (dx != 0.0 || dy != 0.0) {
                offset = std::fmod(sign * (std::atan2(dy, dx) - phi_a), kTwoPi);
                if (offset < 0.0)
                    offset += kTwoPi;
            }
            int sector = static_cast<int>(std::floor(offset / width));
            if (sector >= n)
                sector = n - 1;
            out.at(x, y) = segment_for_sector(level, sector);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Wall depth and layers

WallDepth wall_depth(const LabeledMask& myo) {
    const GridSize size = myo.size();
    const int w = size.width;
    const int h = size.height;
    if (myo.count_nonzero() == 0)
        fail(ErrorKind::RejectedInput, "empty myocardium mask");

    // Background components (4-connected); the one(s) touching the border are outside.
    enum : LabeledMask::Label { kUnvisited = 0, kWall = 1, kOutside = 2, kCavity = 3 };
    LabeledMask region(size);
    for (std::size_t i = 0; i < region.labels().size(); ++i)
        region.labels()[i] = myo.labels()[i] != 0 ? kWall : kUnvisited;

    std::vector<std::pair<int, int>> stack;
    auto flood = [&](int sx, int sy, LabeledMask::Label tag) {
        stack.clear();
        stack.emplace_back(sx, sy);
        region.at(sx, sy) = tag;
        while (!stack.empty()) {
            auto [x, y] = stack.back();
            stack.pop_back();
            constexpr int dx[] = {1, -1, 0, 0};
            constexpr int dy[] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                int nx = x + dx[k], ny = y + dy[k];
                if (size.contains(nx, ny) && region.at(nx, ny) == kUnvisited) {
                    region.at(nx, ny) = tag;
                    stack.emplace_back(nx, ny);
                }
            }
        }
    };
    for (int x = 0; x < w; ++x) {
        if (region.at(x, 0) == kUnvisited) flood(x, 0, kOutside);
        if (region.at(x, h - 1) == kUnvisited) flood(x, h - 1, kOutside);
    }
    for (int y = 0; y < h; ++y) {
        if (region.at(0, y) == kUnvisited) flood(0, y, kOutside);
        if (region.at(w - 1, y) == kUnvisited) flood(w - 1, y, kOutside);
    }
    bool has_cavity = false;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (region.at(x, y) == kUnvisited) {
                flood(x, y, kCavity);
                has_cavity = true;
            }
    if (!has_cavity)
        fail(ErrorKind::Topology, "myocardium mask encloses no cavity (no endocardial boundary)");
    if (region.count(kOutside) == 0)
        fail(ErrorKind::Topology, "myocardium mask has no outside background (no epicardial boundary)");

    auto to_region = [&](LabeledMask::Label tag) {
        LabeledMask target(size, 1);
        for (std::size_t i = 0; i < target.labels().size(); ++i)
            if (region.labels()[i] == tag)
                target.labels()[i] = 0;
        RealField field = distance_transform(target, 1);
        for (double& v : field.values)
            v = v > 0.0 ? v - 0.5 : 0.0;
        return field;
    };
    return {to_region(kCavity), to_region(kOutside)};
}

LabeledMask concentric_layers(const LabeledMask& myo, const WallDepth& depth) {
    LabeledMask out(myo.size());
    for (int y = 0; y < myo.height(); ++y) {
        for (int x = 0; x < myo.width(); ++x) {
            if (myo.at(x, y) == 0)
                continue;
            const double t = depth.relative_depth(x, y);
            out.at(x, y) = t < 1.0 / 3.0 ? 1 : (t < 2.0 / 3.0 ? 2 : 3);
        }
    }
    return out;
}

LabeledMask concentric_layers(const LabeledMask& myo) {
    return concentric_layers(myo, wall_depth(myo));
}

double thickness_at(const LabeledMask& myo, const WallDepth& depth, Point2 p) {
    const int x = static_cast<int>(std::lround(p.x));
    const int y = static_cast<int>(std::lround(p.y));
    if (!myo.size().contains(x, y) || myo.at(x, y) == 0)
        fail(ErrorKind::Argument, "thickness requested outside the myocardium");
    return depth.thickness(x, y);
}

double thickness_at(const LabeledMask& myo, Point2 p) {
    return thickness_at(myo, wall_depth(myo), p);
}

// ---------------------------------------------------------------------------
// Location table

SegmentSet location_to_segments(const WallLocation& loc, SliceLevel level) {
    loc.validate();
    if (level == SliceLevel::Apical) {
        if (loc.axis == WallAxis::Septal) return {14};
        if (loc.axis == WallAxis::Lateral) return {16};
        switch (*loc.base) {
        case WallBase::Anterior: return {13};
        case WallBase::Inferior: return {15};
        case WallBase::Posterior: return {15, 16};
        }
    }
    const LabeledMask::Label o = level == SliceLevel::Mid ? 6 : 0;
    if (!loc.axis) {
        switch (*loc.base) {
        case WallBase::Anterior: return {1 + o};
        case WallBase::Inferior: return {4 + o};
        case WallBase::Posterior: return {5 + o};
        }
    }
    if (!loc.base)
        return *loc.axis == WallAxis::Septal ? SegmentSet{2 + o, 3 + o} : SegmentSet{5 + o, 6 + o};
    if (*loc.axis == WallAxis::Septal)
        return *loc.base == WallBase::Anterior ? SegmentSet{2 + o} : SegmentSet{3 + o};
    return *loc.base == WallBase::Anterior ? SegmentSet{6 + o} : SegmentSet{5 + o};
}

std::set<LabeledMask::Label> layers_for_extent(Extent extent) {
    switch (extent) {
    case Extent::SubEndocardial: return {1};
    case Extent::MidMyocardial: return {2};
    case Extent::Epicardial: return {3};
    case Extent::Transmural: return {1, 2, 3};
    }
    return {};
}

LabeledMask candidate_region(const LabeledMask& myo, const SegmentSet& segments, Extent extent,
                             const LabeledMask& segment_map, const LabeledMask& layer_map) {
    if (segment_map.size() != myo.size() || layer_map.size() != myo.size())
        fail(ErrorKind::Argument, "segment/layer maps do not share the myocardium grid");
    if (segments.empty())
        fail(ErrorKind::Argument, "empty segment set");
    const auto layers = layers_for_extent(extent);
    LabeledMask out(myo.size());
    std::size_t n = 0;
    for (std::size_t i = 0; i < out.labels().size(); ++i) {
        if (myo.labels()[i] != 0 && segments.count(segment_map.labels()[i]) &&
            layers.count(layer_map.labels()[i])) {
            out.labels()[i] = 1;
            ++n;
        }
    }
    if (n == 0)
        fail(ErrorKind::EmptyCandidate, "candidate region is empty");
    return out;
}

} // namespace scarforge
