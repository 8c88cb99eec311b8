#pragma once

#include "scarforge/raster.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace scarforge {

enum class SliceLevel { Basal, Mid, Apical };

enum class WallBase { Anterior, Inferior, Posterior };
enum class WallAxis { Lateral, Septal };

enum class Extent { SubEndocardial, MidMyocardial, Epicardial, Transmural };

/// A wall-location descriptor: a base word, an axis word, or both
/// ("inferoseptal" = inferior + septal).
struct WallLocation {
    std::optional<WallBase> base;
    std::optional<WallAxis> axis;

    /// Throws Argument when neither part is present.
    void validate() const;
    /// Clinical token, e.g. "anterior", "lateral", "inferoseptal".
    std::string token() const;
    static std::optional<WallLocation> from_token(std::string_view token);

    friend bool operator==(const WallLocation&, const WallLocation&) = default;
};

std::string_view to_string(SliceLevel level) noexcept;
std::string_view to_string(WallBase base) noexcept;
std::string_view to_string(WallAxis axis) noexcept;
std::string_view to_string(Extent extent) noexcept;

std::optional<SliceLevel> slice_level_from_string(std::string_view s);
std::optional<Extent> extent_from_string(std::string_view s);

inline constexpr SliceLevel kAllLevels[] = {SliceLevel::Basal, SliceLevel::Mid, SliceLevel::Apical};
inline constexpr Extent kAllExtents[] = {Extent::SubEndocardial, Extent::MidMyocardial,
                                         Extent::Epicardial, Extent::Transmural};

/// Semantic scar description chosen by the controller.
struct ScarSpec {
    WallLocation location;
    Extent extent = Extent::Transmural;
    SliceLevel level = SliceLevel::Mid;

    friend bool operator==(const ScarSpec&, const ScarSpec&) = default;
};

using SegmentSet = std::set<LabeledMask::Label>;

/// Number of equal angular sectors at a level (6 basal/mid, 4 apical).
int sector_count(SliceLevel level) noexcept;

/// AHA segment id for the k-th sector counted from the anterior RVIP in the
/// septal sweep direction. Sector 0 is anteroseptal (2 / 8) or septal (14).
LabeledMask::Label segment_for_sector(SliceLevel level, int sector);

/// Assigns every myocardial pixel (nonzero in `myo`) its AHA segment id.
/// Sectors have equal width and start at the ray center->anterior_rvip; the
/// sweep turns toward the inferior RVIP through the shorter arc (the septum).
LabeledMask angular_segments(const LabeledMask& myo, Point2 center, Point2 anterior_rvip,
                             Point2 inferior_rvip, SliceLevel level);

/// +1 when the septal sweep increases the image angle, -1 otherwise.
/// Throws AmbiguousAnatomy when the RVIPs are diametrically opposite.
int septal_sweep_sign(Point2 center, Point2 anterior_rvip, Point2 inferior_rvip);

/// Distances (pixels) from each pixel to the endocardial and epicardial
/// boundaries. The boundary lies on pixel edges, so a myocardial pixel
/// touching the cavity has d_in = 0.5.
struct WallDepth {
    RealField to_inner;
    RealField to_outer;

    double thickness(int x, int y) const { return to_inner.at(x, y) + to_outer.at(x, y); }
    double relative_depth(int x, int y) const { return to_inner.at(x, y) / thickness(x, y); }
};

/// Splits the background into the component touching the image border
/// (outside) and enclosed components (cavity). Throws Topology when there is
/// no enclosed cavity or no outside.
WallDepth wall_depth(const LabeledMask& myo);

/// 1 = endocardial (t < 1/3), 2 = mid-myocardial, 3 = epicardial (t >= 2/3).
LabeledMask concentric_layers(const LabeledMask& myo);
LabeledMask concentric_layers(const LabeledMask& myo, const WallDepth& depth);

/// Local wall thickness at p (pixels). Throws Argument if p is outside the myocardium.
double thickness_at(const LabeledMask& myo, Point2 p);
double thickness_at(const LabeledMask& myo, const WallDepth& depth, Point2 p);

/// Fixed wall-location table (AHA 17-segment convention, segment 17 excluded).
SegmentSet location_to_segments(const WallLocation& loc, SliceLevel level);

/// Layers admitted by an extent: {1}, {2}, {3} or {1, 2, 3}.
std::set<LabeledMask::Label> layers_for_extent(Extent extent);

/// Pixels inside `myo` whose segment is in `segments` and whose layer fits
/// `extent`. Throws EmptyCandidate when nothing qualifies.
LabeledMask candidate_region(const LabeledMask& myo, const SegmentSet& segments, Extent extent,
                             const LabeledMask& segment_map, const LabeledMask& layer_map);

} // namespace scarforge
