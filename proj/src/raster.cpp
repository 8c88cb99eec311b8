#include "scarforge/raster.hpp"

#include "scarforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace scarforge {

namespace {

void check_spacing(Spacing s) {
    if (!(s.x > 0.0) || !(s.y > 0.0) || !std::isfinite(s.x) || !std::isfinite(s.y))
        fail(ErrorKind::Argument, "pixel spacing must be positive and finite");
}

void check_grid(GridSize size) {
    if (size.width < 0 || size.height < 0)
        fail(ErrorKind::Argument, "negative grid dimension");
}

} // namespace

double distance(Point2 a, Point2 b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// ---------------------------------------------------------------------------
// GrayImage / LabeledMask

GrayImage::GrayImage(GridSize size, Spacing spacing, float fill)
    : size_(size), spacing_(spacing), data_(size.area(), fill) {
    check_grid(size);
    check_spacing(spacing);
    if (!std::isfinite(fill))
        fail(ErrorKind::Argument, "non-finite fill value");
}

GrayImage::GrayImage(GridSize size, Spacing spacing, std::vector<float> data)
    : size_(size), spacing_(spacing), data_(std::move(data)) {
    check_grid(size);
    check_spacing(spacing);
    if (data_.size() != size.area())
        fail(ErrorKind::Argument, "pixel buffer length " + std::to_string(data_.size()) +
                                      " does not match " + std::to_string(size.width) + "x" +
                                      std::to_string(size.height));
    for (float v : data_)
        if (!std::isfinite(v))
            fail(ErrorKind::Argument, "image contains a non-finite intensity");
}

void GrayImage::set_spacing(Spacing spacing) {
    check_spacing(spacing);
    spacing_ = spacing;
}

float GrayImage::max_value() const {
    if (data_.empty())
        fail(ErrorKind::Argument, "max of empty image");
    return *std::max_element(data_.begin(), data_.end());
}

float GrayImage::min_value() const {
    if (data_.empty())
        fail(ErrorKind::Argument, "min of empty image");
    return *std::min_element(data_.begin(), data_.end());
}

LabeledMask::LabeledMask(GridSize size, Label fill) : size_(size), labels_(size.area(), fill) {
    check_grid(size);
}

LabeledMask::LabeledMask(GridSize size, std::vector<Label> labels)
    : size_(size), labels_(std::move(labels)) {
    check_grid(size);
    if (labels_.size() != size.area())
        fail(ErrorKind::Argument, "label buffer length does not match grid");
    for (Label l : labels_)
        if (l < 0)
            fail(ErrorKind::Argument, "negative label");
}

std::size_t LabeledMask::count(Label label) const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

std::size_t LabeledMask::count_nonzero() const {
    return labels_.size() - count(0);
}

std::vector<LabeledMask::Label> LabeledMask::alphabet() const {
    std::set<Label> seen(labels_.begin(), labels_.end());
    return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// AffineTransform

AffineTransform::AffineTransform(double a, double b, double tx, double c, double d, double ty)
    : a_(a), b_(b), tx_(tx), c_(c), d_(d), ty_(ty) {
    for (double v : {a, b, tx, c, d, ty})
        if (!std::isfinite(v))
            fail(ErrorKind::Argument, "affine transform entry is not finite");
    if (determinant() == 0.0)
        fail(ErrorKind::Argument, "affine transform is singular");
}

AffineTransform AffineTransform::translation(double tx, double ty) {
    return {1.0, 0.0, tx, 0.0, 1.0, ty};
}

AffineTransform AffineTransform::scaling(double sx, double sy) {
    return {sx, 0.0, 0.0, 0.0, sy, 0.0};
}

AffineTransform AffineTransform::rotation_about(Point2 center, double angle) {
    if (!std::isfinite(angle))
        fail(ErrorKind::Argument, "rotation angle is not finite");
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    return {cs, -sn, center.x - cs * center.x + sn * center.y,
            sn, cs,  center.y - sn * center.x - cs * center.y};
}

Point2 AffineTransform::apply(Point2 p) const noexcept {
    return {a_ * p.x + b_ * p.y + tx_, c_ * p.x + d_ * p.y + ty_};
}

AffineTransform AffineTransform::inverse() const {
    const double det = determinant();
    if (det == 0.0)
        fail(ErrorKind::Argument, "affine transform is singular");
    const double ia = d_ / det;
    const double ib = -b_ / det;
    const double ic = -c_ / det;
    const double id = a_ / det;
    return {ia, ib, -(ia * tx_ + ib * ty_), ic, id, -(ic * tx_ + id * ty_)};
}

AffineTransform AffineTransform::after(const AffineTransform& f) const noexcept {
    AffineTransform r;
    r.a_ = a_ * f.a_ + b_ * f.c_;
    r.b_ = a_ * f.b_ + b_ * f.d_;
    r.tx_ = a_ * f.tx_ + b_ * f.ty_ + tx_;
    r.c_ = c_ * f.a_ + d_ * f.c_;
    r.d_ = c_ * f.b_ + d_ * f.d_;
    r.ty_ = c_ * f.tx_ + d_ * f.ty_ + ty_;
    return r;
}

// ---------------------------------------------------------------------------
// Warping

namespace {

int nearest_index(double v) {
    return static_cast<int>(std::floor(v + 0.5));
}

bool inside_extent(double sx, double sy, GridSize s) {
    return sx >= -0.5 && sy >= -0.5 && sx < s.width - 0.5 && sy < s.height - 0.5;
}

float sample_bilinear(const GrayImage& img, double sx, double sy) {
    const int w = img.width();
    const int h = img.height();
    sx = std::clamp(sx, 0.0, static_cast<double>(w - 1));
    sy = std::clamp(sy, 0.0, static_cast<double>(h - 1));
    const int x0 = static_cast<int>(std::floor(sx));
    const int y0 = static_cast<int>(std::floor(sy));
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = sx - x0;
    const double fy = sy - y0;
    const double top = img.at(x0, y0) * (1.0 - fx) + img.at(x1, y0) * fx;
    const double bottom = img.at(x0, y1) * (1.0 - fx) + img.at(x1, y1) * fx;
    return static_cast<float>(top * (1.0 - fy) + bottom * fy);
}

} // namespace

GrayImage warp(const GrayImage& img, const AffineTransform& src_to_dst, GridSize out_size,
               Spacing out_spacing, Interp interp, float fill, bool clamp_edges) {
    const AffineTransform back = src_to_dst.inverse();
    GrayImage out(out_size, out_spacing, fill);
    const GridSize in = img.size();
    for (int y = 0; y < out_size.height; ++y) {
        for (int x = 0; x < out_size.width; ++x) {
            Point2 s = back.apply({static_cast<double>(x), static_cast<double>(y)});
            if (!clamp_edges && !inside_extent(s.x, s.y, in))
                continue;
            if (interp == Interp::Nearest) {
                int sx = std::clamp(nearest_index(s.x), 0, in.width - 1);
                int sy = std::clamp(nearest_index(s.y), 0, in.height - 1);
                out.at(x, y) = img.at(sx, sy);
            } else {
                out.at(x, y) = sample_bilinear(img, s.x, s.y);
            }
        }
    }
    return out;
}

LabeledMask warp(const LabeledMask& mask, const AffineTransform& src_to_dst, GridSize out_size,
                 LabeledMask::Label fill) {
    const AffineTransform back = src_to_dst.inverse();
    LabeledMask out(out_size, fill);
    const GridSize in = mask.size();
    for (int y = 0; y < out_size.height; ++y) {
        for (int x = 0; x < out_size.width; ++x) {
            Point2 s = back.apply({static_cast<double>(x), static_cast<double>(y)});
            int sx = nearest_index(s.x);
            int sy = nearest_index(s.y);
            if (in.contains(sx, sy))
                out.at(x, y) = mask.at(sx, sy);
        }
    }
    return out;
}

namespace {

struct ResampleGeometry {
    GridSize size;
    AffineTransform transform;
};

ResampleGeometry resample_geometry(GridSize in, Spacing source, Spacing target) {
    check_spacing(target);
    check_spacing(source);
    const double kx = source.x / target.x;
    const double ky = source.y / target.y;
    GridSize out{static_cast<int>(std::lround(in.width * kx)),
                 static_cast<int>(std::lround(in.height * ky))};
    if (out.width <= 0 || out.height <= 0)
        fail(ErrorKind::RejectedInput, "resampling would produce an empty image");
    return {out, AffineTransform(kx, 0.0, 0.5 * kx - 0.5, 0.0, ky, 0.5 * ky - 0.5)};
}

} // namespace

Resampled resample(const GrayImage& img, Spacing target, Interp interp) {
    auto geo = resample_geometry(img.size(), img.spacing(), target);
    if (geo.size == img.size() && img.spacing() == target) {
        GrayImage copy = img;
        return {std::move(copy), AffineTransform::identity()};
    }
    return {warp(img, geo.transform, geo.size, target, interp, 0.0f, true), geo.transform};
}

ResampledMask resample(const LabeledMask& mask, Spacing source, Spacing target) {
    auto geo = resample_geometry(mask.size(), source, target);
    if (geo.size == mask.size() && source == target)
        return {mask, AffineTransform::identity()};
    // Clamp to the edge like the image path: nearest source index always exists.
    const AffineTransform back = geo.transform.inverse();
    LabeledMask out(geo.size);
    for (int y = 0; y < geo.size.height; ++y) {
        for (int x = 0; x < geo.size.width; ++x) {
            Point2 s = back.apply({static_cast<double>(x), static_cast<double>(y)});
            int sx = std::clamp(nearest_index(s.x), 0, mask.width() - 1);
            int sy = std::clamp(nearest_index(s.y), 0, mask.height() - 1);
            out.at(x, y) = mask.at(sx, sy);
        }
    }
    return {std::move(out), geo.transform};
}

Resampled rotate_about(const GrayImage& img, Point2 center, double angle, Interp interp,
                       float fill) {
    if (angle == 0.0)
        return {img, AffineTransform::identity()};
    auto t = AffineTransform::rotation_about(center, angle);
    return {warp(img, t, img.size(), img.spacing(), interp, fill, false), t};
}

ResampledMask rotate_about(const LabeledMask& mask, Point2 center, double angle,
                           LabeledMask::Label fill) {
    if (angle == 0.0)
        return {mask, AffineTransform::identity()};
    auto t = AffineTransform::rotation_about(center, angle);
    return {warp(mask, t, mask.size(), fill), t};
}

// ---------------------------------------------------------------------------
// Gaussian smoothing

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        fail(ErrorKind::Argument, "gaussian sigma must be finite and >= 0");
    if (sigma == 0.0)
        return {1.0};
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
        k[static_cast<std::size_t>(i + radius)] = w;
        sum += w;
    }
    for (double& w : k)
        w /= sum;
    return k;
}

GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
    const auto kernel = gaussian_kernel(sigma);
    if (sigma == 0.0)
        return img;
    const int radius = static_cast<int>(kernel.size() / 2);
    const int w = img.width();
    const int h = img.height();

    // Separable passes with zero padding; equivalent to the 2D product kernel.
    std::vector<double> rows(img.size().area(), 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            const int lo = std::max(-radius, -x);
            const int hi = std::min(radius, w - 1 - x);
            for (int i = lo; i <= hi; ++i)
                acc += kernel[static_cast<std::size_t>(i + radius)] * img.at(x + i, y);
            rows[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    GrayImage out(img.size(), img.spacing());
    for (int y = 0; y < h; ++y) {
        const int lo = std::max(-radius, -y);
        const int hi = std::min(radius, h - 1 - y);
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int j = lo; j <= hi; ++j)
                acc += kernel[static_cast<std::size_t>(j + radius)] *
                       rows[static_cast<std::size_t>(y + j) * w + x];
            out.at(x, y) = static_cast<float>(acc);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact Euclidean distance transform (lower envelope of parabolas, separable)

namespace {

constexpr double kFar = 1e20;

// Squared 1D distance transform of f over n samples (Felzenszwalb & Huttenlocher).
void edt_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        for (;;) {
            const int p = v[static_cast<std::size_t>(k)];
            s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * q - 2.0 * p);
            if (s <= z[static_cast<std::size_t>(k)] && k > 0) {
                --k;
                continue;
            }
            break;
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < q)
            ++k;
        const int p = v[static_cast<std::size_t>(k)];
        d[q] = double(q - p) * (q - p) + f[p];
    }
}

} // namespace

RealField distance_transform(const LabeledMask& mask, LabeledMask::Label foreground_label) {
    const int w = mask.width();
    const int h = mask.height();
    RealField out{mask.size(), std::vector<double>(mask.size().area())};
    if (w == 0 || h == 0)
        return out;

    std::vector<double> grid(mask.size().area());
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = mask.labels()[i] == foreground_label ? kFar : 0.0;

    const int n = std::max(w, h);
    std::vector<double> f(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n));
    std::vector<int> v(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(n) + 1);

    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y)
            f[static_cast<std::size_t>(y)] = grid[static_cast<std::size_t>(y) * w + x];
        edt_1d(f.data(), d.data(), h, v, z);
        for (int y = 0; y < h; ++y)
            grid[static_cast<std::size_t>(y) * w + x] = d[static_cast<std::size_t>(y)];
    }
    for (int y = 0; y < h; ++y) {
        double* row = grid.data() + static_cast<std::size_t>(y) * w;
        std::copy(row, row + w, f.begin());
        edt_1d(f.data(), d.data(), w, v, z);
        std::copy(d.begin(), d.begin() + w, row);
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.values[i] = grid[i] >= kFar * 0.5 ? std::numeric_limits<double>::infinity()
                                              : std::sqrt(grid[i]);
    return out;
}

RealField finite_distance_transform(const LabeledMask& mask, LabeledMask::Label foreground_label) {
    if (mask.count(foreground_label) == mask.size().area())
        fail(ErrorKind::RejectedInput, "distance transform of an all-foreground mask is unbounded");
    return distance_transform(mask, foreground_label);
}

// ---------------------------------------------------------------------------
// Intensity statistics

double percentile(std::span<const float> values, double q) {
    if (values.empty())
        fail(ErrorKind::Argument, "percentile of empty image");
    if (!(q >= 0.0 && q <= 100.0))
        fail(ErrorKind::Argument, "percentile q must lie in [0, 100]");
    std::vector<float> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double rank = q / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (static_cast<double>(sorted[hi]) - sorted[lo]);
}

double percentile(const GrayImage& img, double q) {
    return percentile(img.pixels(), q);
}

GrayImage minmax_normalize(const GrayImage& img) {
    GrayImage out(img.size(), img.spacing());
    if (img.empty())
        return out;
    const double lo = img.min_value();
    const double hi = img.max_value();
    if (hi == lo)
        return out;
    auto src = img.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = static_cast<float>((src[i] - lo) / (hi - lo));
    return out;
}

GrayImage clamp_max(const GrayImage& img, float cap) {
    GrayImage out = img;
    for (float& v : out.pixels())
        v = std::min(v, cap);
    return out;
}

// ---------------------------------------------------------------------------
// Geometry on masks

Point2 centroid(const LabeledMask& mask, LabeledMask::Label label) {
    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y) == label) {
                sx += x;
                sy += y;
                ++n;
            }
    if (n == 0)
        fail(ErrorKind::RejectedInput, "centroid of an empty label");
    return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

LabeledMask rasterize_ellipse(Point2 center, double r1, double r2, double angle, GridSize grid) {
    if (!(r1 > 0.0) || !(r2 > 0.0))
        fail(ErrorKind::Argument, "ellipse radii must be positive");
    // Points within 1e-9 of the boundary count as inside so that symmetric
    // parameterisations (a vs a+pi, swapped radii) agree despite rounding.
    constexpr double kBoundaryTolerance = 1e-9;
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    LabeledMask out(grid);
    const double reach = std::max(r1, r2);
    const int x0 = std::max(0, static_cast<int>(std::floor(center.x - reach)));
    const int x1 = std::min(grid.width - 1, static_cast<int>(std::ceil(center.x + reach)));
    const int y0 = std::max(0, static_cast<int>(std::floor(center.y - reach)));
    const int y1 = std::min(grid.height - 1, static_cast<int>(std::ceil(center.y + reach)));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - center.x;
            const double dy = y - center.y;
            const double along = (dx * ux + dy * uy) / r1;
            const double across = (-dx * uy + dy * ux) / r2;
            if (along * along + across * across <= 1.0 + kBoundaryTolerance)
                out.at(x, y) = 1;
        }
    }
    return out;
}

LabeledMask binarize(const LabeledMask& mask) {
    LabeledMask out(mask.size());
    auto src = mask.labels();
    auto dst = out.labels();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = src[i] != 0 ? 1 : 0;
    return out;
}

} // namespace scarforge
