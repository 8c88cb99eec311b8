#include "oracles.hpp"
#include "test_util.hpp"

#include "scarforge/anatomy.hpp"
#include "scarforge/phantoms.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

using namespace scarforge;
using testutil::error_kind;

namespace {

constexpr double kPi = std::numbers::pi;

LabeledMask annulus(Point2 c, double r_in, double r_out, GridSize g = {224, 224}) {
    Rng unused(0);
    return make_annulus(c, r_in, r_out, g, 1.0, 0.0, unused).myo;
}

struct Config {
    Point2 center;
    double r_in, r_out;
    double anterior_angle, separation;
    int sweep;
};

// Non-integer centers keep every pixel strictly off the sector boundaries.
const Config kConfigs[] = {
    {{112.37, 111.61}, 20, 30, -kPi / 2, 2 * kPi / 3, +1},
    {{100.13, 120.77}, 25, 38, 0.4, 1.9, -1},
    {{118.52, 96.29}, 15, 22, 2.7, 1.2, +1},
    {{109.91, 114.44}, 30, 45, -2.2, 2.4, -1},
    {{121.06, 107.83}, 18, 33, 1.3, 2.05, +1},
};

} // namespace

TEST_CASE("segment map equals the per-pixel angular oracle") {
    for (const auto& cfg : kConfigs) {
        const LabeledMask myo = annulus(cfg.center, cfg.r_in, cfg.r_out);
        const RvipPair rv = place_rvips(cfg.center, cfg.r_out, cfg.anterior_angle, cfg.separation, cfg.sweep);
        for (SliceLevel level : kAllLevels) {
            const LabeledMask seg = angular_segments(myo, cfg.center, rv.anterior, rv.inferior, level);
            std::size_t mismatches = 0;
            for (int y = 0; y < 224; ++y)
                for (int x = 0; x < 224; ++x) {
                    const int expect = myo.at(x, y)
                                           ? oracle::segment_of({double(x), double(y)}, cfg.center,
                                                                rv.anterior, rv.inferior, level)
                                           : 0;
                    mismatches += seg.at(x, y) != expect;
                }
            CHECK(mismatches == 0);
            const auto labels = seg.alphabet();
            CHECK(labels.size() == static_cast<std::size_t>(sector_count(level)) + 1);
        }
    }
}

TEST_CASE("basal inferoseptal sector carries segment 3") {
    const Point2 c{112.37, 111.61};
    const LabeledMask myo = annulus(c, 20, 30);
    const RvipPair rv = place_rvips(c, 30, -kPi / 2, 2 * kPi / 3, +1);
    const LabeledMask seg = angular_segments(myo, c, rv.anterior, rv.inferior, SliceLevel::Basal);
    std::size_t in_sector = 0;
    for (int y = 0; y < 224; ++y)
        for (int x = 0; x < 224; ++x) {
            if (!myo.at(x, y))
                continue;
            // Sweep +1 from the top: offset is the plain image angle minus -90 degrees.
            double off = std::atan2(y - c.y, x - c.x) + kPi / 2;
            if (off < 0)
                off += 2 * kPi;
            if (off >= kPi / 3 && off < 2 * kPi / 3) {
                ++in_sector;
                CHECK(seg.at(x, y) == 3);
            }
        }
    CHECK(in_sector > 0);
}

TEST_CASE("symmetric annulus sector populations") {
    const Point2 c{112.5, 112.5};
    const LabeledMask myo = annulus(c, 20, 30);
    const RvipPair rv = place_rvips(c, 30, -kPi / 2 + 0.013, 2 * kPi / 3, -1);
    const auto seg = angular_segments(myo, c, rv.anterior, rv.inferior, SliceLevel::Basal);
    const double total = static_cast<double>(myo.count_nonzero());
    for (int s = 1; s <= 6; ++s)
        CHECK(std::abs(seg.count(s) - total / 6) <= 0.02 * total / 6);

    const auto apical = angular_segments(myo, c, rv.anterior, rv.inferior, SliceLevel::Apical);
    CHECK(apical.alphabet() == std::vector<LabeledMask::Label>{0, 13, 14, 15, 16});
}

TEST_CASE("sweep sign and degenerate landmarks") {
    const Point2 c{50, 50};
    CHECK(septal_sweep_sign(c, {50, 20}, {80, 60}) == 1);
    CHECK(septal_sweep_sign(c, {50, 20}, {20, 60}) == -1);
    CHECK(error_kind([&] { septal_sweep_sign(c, {50, 20}, {50, 80}); }) == ErrorKind::AmbiguousAnatomy);
    CHECK(error_kind([&] { septal_sweep_sign(c, c, {50, 80}); }) == ErrorKind::DegenerateLandmarks);
    CHECK(error_kind([&] { septal_sweep_sign(c, {50, 20}, {50, 10}); }) == ErrorKind::DegenerateLandmarks);
}

TEST_CASE("segment numbering") {
    CHECK(segment_for_sector(SliceLevel::Basal, 0) == 2);
    CHECK(segment_for_sector(SliceLevel::Basal, 5) == 1);
    CHECK(segment_for_sector(SliceLevel::Mid, 0) == 8);
    CHECK(segment_for_sector(SliceLevel::Apical, 0) == 14);
    CHECK(segment_for_sector(SliceLevel::Apical, 3) == 13);
    CHECK(error_kind([] { segment_for_sector(SliceLevel::Apical, 4); }) == ErrorKind::Argument);
}

TEST_CASE("concentric layers on r in [20, 30]") {
    const Point2 c{112, 112};
    const LabeledMask myo = annulus(c, 20, 30);
    const LabeledMask layers = concentric_layers(myo);
    CHECK(layers.at(112 + 21, 112) == 1);
    CHECK(layers.at(112 + 25, 112) == 2);
    CHECK(layers.at(112 + 29, 112) == 3);
    CHECK(layers.at(112, 112 - 21) == 1);
    CHECK(layers.at(112, 112 - 29) == 3);

    // Partition: nonzero exactly on the myocardium, labels in {1, 2, 3}.
    std::map<int, double> pop;
    for (int y = 0; y < 224; ++y)
        for (int x = 0; x < 224; ++x) {
            const int l = layers.at(x, y);
            CHECK((l != 0) == (myo.at(x, y) != 0));
            CHECK(l >= 0);
            CHECK(l <= 3);
            pop[l] += 1;
        }
    // Analytic areas of the three radial thirds of the annulus.
    const double third = 10.0 / 3;
    for (int k = 1; k <= 3; ++k) {
        const double ri = 20 + (k - 1) * third, ro = 20 + k * third;
        const double area = kPi * (ro * ro - ri * ri);
        CHECK(std::abs(pop[k] - area) <= 0.10 * area);
    }

    // Layer index is monotone in relative depth.
    const WallDepth depth = wall_depth(myo);
    double max_t[4] = {-1, -1, -1, -1}, min_t[4] = {2, 2, 2, 2};
    for (int y = 0; y < 224; ++y)
        for (int x = 0; x < 224; ++x)
            if (int l = layers.at(x, y)) {
                max_t[l] = std::max(max_t[l], depth.relative_depth(x, y));
                min_t[l] = std::min(min_t[l], depth.relative_depth(x, y));
            }
    CHECK(max_t[1] < min_t[2]);
    CHECK(max_t[2] < min_t[3]);
}

TEST_CASE("thickness") {
    const Point2 c{112, 112};
    const LabeledMask myo = annulus(c, 20, 30);
    const WallDepth depth = wall_depth(myo);
    for (int y = 0; y < 224; ++y)
        for (int x = 0; x < 224; ++x)
            if (myo.at(x, y))
                CHECK(std::abs(depth.thickness(x, y) - 10.0) <= 1.0);
    CHECK(thickness_at(myo, {112 + 25, 112}) == doctest::Approx(depth.thickness(137, 112)));
    CHECK(error_kind([&] { thickness_at(myo, {112, 112}); }) == ErrorKind::Argument);

    // Boundary pixels: thickness is the distance across to the other side.
    const auto to_outside = oracle::distance_transform(
        [&] {
            LabeledMask filled = myo;
            for (int y = 0; y < 224; ++y)
                for (int x = 0; x < 224; ++x)
                    if (std::hypot(x - c.x, y - c.y) < 20)
                        filled.at(x, y) = 1;
            return filled;
        }(),
        1);
    for (int y = 0; y < 224; ++y)
        for (int x = 0; x < 224; ++x) {
            if (!myo.at(x, y))
                continue;
            const bool touches_cavity = std::hypot(x + 1 - c.x, y - c.y) < 20 || std::hypot(x - 1 - c.x, y - c.y) < 20 ||
                                        std::hypot(x - c.x, y + 1 - c.y) < 20 || std::hypot(x - c.x, y - 1 - c.y) < 20;
            if (touches_cavity)
                CHECK(std::abs(depth.thickness(x, y) - to_outside[y * 224 + x]) <= 1.0);
        }

    const LabeledMask thin = annulus({60.5, 60.5}, 24.5, 25.5, {121, 121});
    const WallDepth td = wall_depth(thin);
    for (int y = 0; y < 121; ++y)
        for (int x = 0; x < 121; ++x)
            if (thin.at(x, y)) {
                CHECK(td.thickness(x, y) >= 1.0);
                CHECK(td.thickness(x, y) <= 2.0);
            }
}

TEST_CASE("wall_depth needs a cavity and an outside") {
    LabeledMask disk({40, 40});
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 40; ++x)
            if (std::hypot(x - 20, y - 20) < 10)
                disk.at(x, y) = 1;
    CHECK(error_kind([&] { wall_depth(disk); }) == ErrorKind::Topology);
    CHECK(error_kind([&] { wall_depth(LabeledMask({8, 8})); }) == ErrorKind::RejectedInput);
}

TEST_CASE("location table") {
    CHECK(location_to_segments({WallBase::Inferior, WallAxis::Septal}, SliceLevel::Basal) == SegmentSet{3});
    CHECK(location_to_segments({WallBase::Anterior, std::nullopt}, SliceLevel::Apical) == SegmentSet{13});
    CHECK(location_to_segments({WallBase::Anterior, std::nullopt}, SliceLevel::Basal) == SegmentSet{1});

    const std::optional<WallBase> bases[] = {std::nullopt, WallBase::Anterior, WallBase::Inferior,
                                             WallBase::Posterior};
    const std::optional<WallAxis> axes[] = {std::nullopt, WallAxis::Lateral, WallAxis::Septal};
    int rows = 0;
    for (auto b : bases)
        for (auto a : axes) {
            if (!b && !a)
                continue;
            const WallLocation loc{b, a};
            const std::string tok = loc.token();
            CHECK(WallLocation::from_token(tok) == loc);
            for (SliceLevel level : kAllLevels) {
                const auto want = oracle::location_table(tok, level);
                REQUIRE_MESSAGE(!want.empty(), tok);
                const SegmentSet got = location_to_segments(loc, level);
                CHECK_MESSAGE(SegmentSet(want.begin(), want.end()) == got, tok);
            }
            ++rows;
        }
    CHECK(rows == 11);
    CHECK(WallLocation{WallBase::Inferior, WallAxis::Septal}.token() == "inferoseptal");
    CHECK(WallLocation{std::nullopt, WallAxis::Lateral}.token() == "lateral");
    CHECK(WallLocation{WallBase::Posterior, WallAxis::Lateral}.token() == "posterolateral");
    CHECK_FALSE(WallLocation::from_token("septolateral"));
    CHECK(error_kind([] { WallLocation{}.validate(); }) == ErrorKind::Argument);
}

TEST_CASE("candidate_region") {
    const Point2 c{112.5, 112.5};
    const LabeledMask myo = annulus(c, 20, 30);
    const RvipPair rv = place_rvips(c, 30, -kPi / 2 + 0.013, 2 * kPi / 3, +1);
    const auto seg = angular_segments(myo, c, rv.anterior, rv.inferior, SliceLevel::Basal);
    const auto lay = concentric_layers(myo);
    const SegmentSet all{1, 2, 3, 4, 5, 6};

    CHECK(candidate_region(myo, all, Extent::Transmural, seg, lay) == binarize(myo));

    const auto sub3 = candidate_region(myo, {3}, Extent::SubEndocardial, seg, lay);
    const double n = static_cast<double>(myo.count_nonzero());
    // One sixth of the angle times the innermost radial third of the area.
    const double inner_fraction = (23.3333 * 23.3333 - 400) / (900 - 400);
    CHECK(std::abs(sub3.count(1) - n / 6 * inner_fraction) <= 0.06 * n / 6 * inner_fraction);
    // The naive |myo|/18 ignores that the inner third is the smallest ring.
    CHECK(std::abs(sub3.count(1) - n / 18) <= 0.20 * n / 18);

    const auto epi1 = candidate_region(myo, {1}, Extent::Epicardial, seg, lay);
    for (int y = 0; y < 224; ++y)
        for (int x = 0; x < 224; ++x)
            CHECK((epi1.at(x, y) == 1) == (seg.at(x, y) == 1 && lay.at(x, y) == 3));

    for (const SegmentSet& s : {SegmentSet{1}, SegmentSet{2, 3}, SegmentSet{5, 6}})
        for (Extent e : kAllExtents) {
            const auto sub = candidate_region(myo, s, e, seg, lay);
            const auto full = candidate_region(myo, s, Extent::Transmural, seg, lay);
            for (int y = 0; y < 224; ++y)
                for (int x = 0; x < 224; ++x)
                    if (sub.at(x, y))
                        CHECK(full.at(x, y));
        }

    CHECK(error_kind([&] { candidate_region(myo, {13}, Extent::Transmural, seg, lay); }) ==
          ErrorKind::EmptyCandidate);
    CHECK(error_kind([&] { candidate_region(myo, {}, Extent::Transmural, seg, lay); }) == ErrorKind::Argument);
}

TEST_CASE("layers admitted by each extent") {
    CHECK(layers_for_extent(Extent::SubEndocardial) == std::set<LabeledMask::Label>{1});
    CHECK(layers_for_extent(Extent::MidMyocardial) == std::set<LabeledMask::Label>{2});
    CHECK(layers_for_extent(Extent::Epicardial) == std::set<LabeledMask::Label>{3});
    CHECK(layers_for_extent(Extent::Transmural) == std::set<LabeledMask::Label>{1, 2, 3});
}
