#include "oracles.hpp"
#include "test_util.hpp"

#include "scarforge/raster.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace scarforge;
using testutil::error_kind;

TEST_CASE("GrayImage enforces its invariants") {
    CHECK(error_kind([] { GrayImage({2, 2}, {1, 1}, std::vector<float>(3)); }) == ErrorKind::Argument);
    CHECK(error_kind([] { GrayImage({2, 2}, {0, 1}); }) == ErrorKind::Argument);
    CHECK(error_kind([] { GrayImage({1, 1}, {1, 1}, std::vector<float>{NAN}); }) == ErrorKind::Argument);
    CHECK(error_kind([] { GrayImage({1, 1}, {1, 1}, std::vector<float>{INFINITY}); }) == ErrorKind::Argument);
    CHECK_FALSE(error_kind([] { GrayImage({2, 3}, {0.5, 2}, std::vector<float>(6)); }));
}

TEST_CASE("AffineTransform composition and inverse") {
    const auto r = AffineTransform::rotation_about({3, 4}, 0.7);
    const auto t = AffineTransform::translation(2, -1);
    const auto both = t.after(r);
    const Point2 p{5.5, -2.25};
    const Point2 expect = t.apply(r.apply(p));
    CHECK(both.apply(p).x == doctest::Approx(expect.x).epsilon(1e-14));
    CHECK(both.apply(p).y == doctest::Approx(expect.y).epsilon(1e-14));
    const Point2 back = both.inverse().apply(both.apply(p));
    CHECK(back.x == doctest::Approx(p.x).epsilon(1e-12));
    CHECK(back.y == doctest::Approx(p.y).epsilon(1e-12));
    CHECK(error_kind([] { AffineTransform(1, 2, 0, 2, 4, 0).inverse(); }) == ErrorKind::Argument);
}

TEST_CASE("resample") {
    SUBCASE("192 at 1.5 mm to 1 mm gives 288") {
        GrayImage img({192, 192}, {1.5, 1.5}, 0.25f);
        const auto r = resample(img, {1.0, 1.0});
        CHECK(r.image.width() == 288);
        CHECK(r.image.height() == 288);
        CHECK(r.image.spacing() == Spacing{1.0, 1.0});
    }
    SUBCASE("same spacing is identity") {
        Rng rng(3);
        GrayImage img = testutil::random_image(rng, 13, 9);
        const auto r = resample(img, img.spacing());
        for (int y = 0; y < 9; ++y)
            for (int x = 0; x < 13; ++x)
                CHECK(std::abs(r.image.at(x, y) - img.at(x, y)) <= 1e-6);
    }
    SUBCASE("checkerboard 2 mm to 1 mm") {
        GrayImage img({4, 4}, {2.0, 2.0});
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x)
                img.at(x, y) = static_cast<float>((x + y) % 2);
        const auto nn = resample(img, {1.0, 1.0}, Interp::Nearest);
        REQUIRE(nn.image.size() == GridSize{8, 8});
        // Nearest oracle: destination pixel center maps to source
        // (x + 0.5) / 2 - 0.5, then round to the nearest source pixel.
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x) {
                const int sx = static_cast<int>(std::lround((x + 0.5) / 2 - 0.5 + 1e-9));
                const int sy = static_cast<int>(std::lround((y + 0.5) / 2 - 0.5 + 1e-9));
                if (x % 2 == 0 && y % 2 == 0)
                    CHECK(nn.image.at(x, y) == img.at(x / 2, y / 2));
                CHECK(nn.image.at(x, y) == img.at(std::clamp(sx, 0, 3), std::clamp(sy, 0, 3)));
            }
        const auto bl = resample(img, {1.0, 1.0}, Interp::Bilinear);
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                CHECK(bl.image.at(x, y) ==
                      doctest::Approx(oracle::bilinear_clamped(img, (x + 0.5) / 2 - 0.5, (y + 0.5) / 2 - 0.5))
                          .epsilon(1e-6));
        const Point2 p = bl.transform.apply({1, 2});
        CHECK(p.x == doctest::Approx(2.5));
        CHECK(p.y == doctest::Approx(4.5));
    }
    SUBCASE("mask resample keeps the alphabet") {
        LabeledMask m({6, 6});
        m.at(2, 2) = 3;
        m.at(3, 3) = 7;
        const auto r = resample(m, {2.0, 2.0}, {1.0, 1.0});
        CHECK(r.mask.size() == GridSize{12, 12});
        CHECK(r.mask.alphabet() == std::vector<LabeledMask::Label>{0, 3, 7});
        CHECK(r.mask.count(3) == 4);
    }
}

TEST_CASE("rotate_about") {
    Rng rng(11);
    const GrayImage img = testutil::random_image(rng, 20, 17);
    SUBCASE("angle 0 is an exact copy") {
        const auto r = rotate_about(img, {7.3, 4.1}, 0.0);
        CHECK(r.image == img);
        CHECK(r.transform == AffineTransform::identity());
        LabeledMask m({5, 5});
        m.at(1, 2) = 4;
        CHECK(rotate_about(m, {2, 2}, 0.0).mask == m);
    }
    SUBCASE("full turn") {
        const auto r = rotate_about(img, {10, 8}, 2 * std::numbers::pi);
        for (int y = 1; y < 16; ++y)
            for (int x = 1; x < 19; ++x)
                CHECK(std::abs(r.image.at(x, y) - img.at(x, y)) <= 1e-6);
    }
    SUBCASE("single bright pixel quarter turn") {
        GrayImage dot({16, 16}, {1, 1});
        dot.at(10, 5) = 1.0f;
        const auto r = rotate_about(dot, {8, 8}, std::numbers::pi / 2);
        // R(pi/2) sends (2, -3) to (3, 2).
        double sx = 0, sy = 0, s = 0;
        for (int y = 0; y < 16; ++y)
            for (int x = 0; x < 16; ++x) {
                sx += x * r.image.at(x, y);
                sy += y * r.image.at(x, y);
                s += r.image.at(x, y);
            }
        REQUIRE(s > 0.5);
        CHECK(std::abs(sx / s - 11.0) <= 0.5);
        CHECK(std::abs(sy / s - 10.0) <= 0.5);
        const Point2 q = r.transform.apply({10, 5});
        CHECK(q.x == doctest::Approx(11.0));
        CHECK(q.y == doctest::Approx(10.0));
    }
    SUBCASE("out of bounds samples take the fill value") {
        GrayImage ones({9, 9}, {1, 1}, 1.0f);
        const auto r = rotate_about(ones, {0, 0}, std::numbers::pi, Interp::Nearest, -2.0f);
        CHECK(r.image.at(8, 8) == -2.0f);
    }
}

TEST_CASE("gaussian_smooth") {
    Rng rng(5);
    const GrayImage img = testutil::random_image(rng, 16, 16);
    CHECK(gaussian_smooth(img, 0.0) == img);

    const GrayImage flat({30, 30}, {1, 1}, 0.375f);
    const GrayImage smooth = gaussian_smooth(flat, 2.5);
    for (int y = 8; y < 22; ++y)
        for (int x = 8; x < 22; ++x)
            CHECK(std::abs(smooth.at(x, y) - 0.375) <= 1e-6);

    const auto ref = oracle::gaussian_convolve(img, 2.0);
    const GrayImage out = gaussian_smooth(img, 2.0);
    double worst = 0;
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            worst = std::max(worst, std::abs(out.at(x, y) - ref[y * 16 + x]));
    CHECK(worst <= 1e-6);

    const auto k = gaussian_kernel(1.3);
    CHECK(k.size() == 2 * 4 + 1);
    double sum = 0;
    for (double w : k)
        sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(error_kind([] { gaussian_kernel(-1); }) == ErrorKind::Argument);
}

TEST_CASE("distance_transform") {
    LabeledMask one({7, 7});
    one.at(3, 3) = 1;
    const auto d1 = distance_transform(one, 1);
    CHECK(d1.at(3, 3) == 1.0);
    CHECK(d1.at(0, 0) == 0.0);

    LabeledMask disk({41, 41});
    for (int y = 0; y < 41; ++y)
        for (int x = 0; x < 41; ++x)
            if (std::hypot(x - 20, y - 20) <= 10)
                disk.at(x, y) = 1;
    const auto dd = distance_transform(disk, 1);
    const auto ref = oracle::distance_transform(disk, 1);
    CHECK(std::abs(dd.at(20, 20) - 10.0) <= 0.5);
    for (std::size_t i = 0; i < ref.size(); ++i)
        CHECK(dd.values[i] == doctest::Approx(ref[i]).epsilon(1e-12));

    LabeledMask full({4, 3}, 2);
    CHECK(std::isinf(distance_transform(full, 2).at(1, 1)));
    CHECK(error_kind([&] { finite_distance_transform(full, 2); }) == ErrorKind::RejectedInput);
}

TEST_CASE("percentile and minmax") {
    GrayImage v({4, 1}, {1, 1}, std::vector<float>{3, 0, 2, 1});
    CHECK(percentile(v, 50) == doctest::Approx(1.5));
    CHECK(percentile(v, 0) == 0.0);
    CHECK(percentile(v, 100) == 3.0);
    CHECK(error_kind([&] { percentile(v, 101); }) == ErrorKind::Argument);

    Rng rng(9);
    const GrayImage r = testutil::random_image(rng, 11, 7);
    std::vector<double> vals(r.pixels().begin(), r.pixels().end());
    for (double q : {0.0, 12.5, 50.0, 98.0, 99.9, 100.0})
        CHECK(percentile(r, q) == doctest::Approx(oracle::percentile(vals, q)).epsilon(1e-12));

    const auto a = minmax_normalize(GrayImage({2, 1}, {1, 1}, std::vector<float>{2, 4}));
    CHECK(a.at(0, 0) == 0.0f);
    CHECK(a.at(1, 0) == 1.0f);
    const auto b = minmax_normalize(GrayImage({3, 1}, {1, 1}, 7.0f));
    for (float x : b.pixels())
        CHECK(x == 0.0f);
    const auto c = minmax_normalize(GrayImage({3, 1}, {1, 1}, std::vector<float>{1, 2, 3}));
    CHECK(c.at(1, 0) == 0.5f);
    CHECK(c.at(2, 0) == 1.0f);
}

TEST_CASE("centroid") {
    LabeledMask m({20, 20});
    m.at(3, 4) = 1;
    CHECK(centroid(m, 1) == Point2{3, 4});
    LabeledMask b({20, 20});
    for (int y : {10, 11})
        for (int x : {10, 11})
            b.at(x, y) = 2;
    CHECK(centroid(b, 2) == Point2{10.5, 10.5});
    CHECK(error_kind([&] { centroid(b, 5); }) == ErrorKind::RejectedInput);

    LabeledMask ring({112, 112});
    double sx = 0, sy = 0, n = 0;
    for (int y = 0; y < 112; ++y)
        for (int x = 0; x < 112; ++x)
            if (oracle::in_annulus(x, y, {56, 56}, 20, 30)) {
                ring.at(x, y) = 1;
                sx += x, sy += y, ++n;
            }
    const Point2 c = centroid(ring, 1);
    CHECK(std::abs(c.x - 56) <= 0.1);
    CHECK(std::abs(c.y - 56) <= 0.1);
    CHECK(c.x == doctest::Approx(sx / n));
    CHECK(c.y == doctest::Approx(sy / n));
}

TEST_CASE("rasterize_ellipse") {
    const GridSize g{21, 21};
    const auto unit = rasterize_ellipse({10, 10}, 1, 1, 0.3, g);
    CHECK(unit.count(1) == 5);
    for (auto [x, y] : {std::pair{10, 10}, {9, 10}, {11, 10}, {10, 9}, {10, 11}})
        CHECK(unit.at(x, y) == 1);

    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const Point2 c{rng.uniform(3, 17), rng.uniform(3, 17)};
        const double r1 = rng.uniform(0.5, 8), r2 = rng.uniform(0.5, 8);
        const double a = rng.uniform(0, std::numbers::pi);
        const auto m = rasterize_ellipse(c, r1, r2, a, g);
        CHECK(m == rasterize_ellipse(c, r1, r2, a + std::numbers::pi, g));
        for (int y = 0; y < 21; ++y)
            for (int x = 0; x < 21; ++x) {
                const double dx = x - c.x, dy = y - c.y;
                const double u = dx * std::cos(a) + dy * std::sin(a);
                const double v = -dx * std::sin(a) + dy * std::cos(a);
                const double q = (u / r1) * (u / r1) + (v / r2) * (v / r2);
                if (std::abs(q - 1) > 1e-6)
                    CHECK(m.at(x, y) == (q <= 1 ? 1 : 0));
            }
    }
    const auto circle = rasterize_ellipse({10.2, 9.7}, 5, 5, 0, g);
    for (double a : {0.4, 1.1, 2.9})
        CHECK(rasterize_ellipse({10.2, 9.7}, 5, 5, a, g) == circle);
}

TEST_CASE("binarize and alphabet") {
    LabeledMask m({3, 1}, std::vector<LabeledMask::Label>{0, 5, 9});
    const auto b = binarize(m);
    CHECK(b.alphabet() == std::vector<LabeledMask::Label>{0, 1});
    CHECK(b.count_nonzero() == 2);
}
