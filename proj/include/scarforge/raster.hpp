#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scarforge {

// Coordinate frame used throughout: x = column (rightward), y = row
// (downward), pixel (i, j) has its center at (i, j). Angles are measured
// from +x toward +y.

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b) noexcept;

struct Spacing {
    double x = 1.0; // mm per pixel along columns
    double y = 1.0; // mm per pixel along rows

    friend bool operator==(const Spacing&, const Spacing&) = default;
};

struct GridSize {
    int width = 0;
    int height = 0;

    std::size_t area() const noexcept {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width && y < height;
    }

    friend bool operator==(const GridSize&, const GridSize&) = default;
};

/// 2D float raster with physical pixel spacing, row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(GridSize size, Spacing spacing, float fill = 0.0f);
    GrayImage(GridSize size, Spacing spacing, std::vector<float> data);

    int width() const noexcept { return size_.width; }
    int height() const noexcept { return size_.height; }
    GridSize size() const noexcept { return size_; }
    Spacing spacing() const noexcept { return spacing_; }
    bool empty() const noexcept { return data_.empty(); }

    float at(int x, int y) const { return data_[index(x, y)]; }
    float& at(int x, int y) { return data_[index(x, y)]; }

    std::span<const float> pixels() const noexcept { return data_; }
    std::span<float> pixels() noexcept { return data_; }

    void set_spacing(Spacing spacing);

    float max_value() const;
    float min_value() const;

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(size_.width) +
               static_cast<std::size_t>(x);
    }

    GridSize size_{};
    Spacing spacing_{};
    std::vector<float> data_;
};

/// Integer label raster, 0 = background.
class LabeledMask {
public:
    using Label = std::int32_t;

    LabeledMask() = default;
    explicit LabeledMask(GridSize size, Label fill = 0);
    LabeledMask(GridSize size, std::vector<Label> labels);

    int width() const noexcept { return size_.width; }
    int height() const noexcept { return size_.height; }
    GridSize size() const noexcept { return size_; }

    Label at(int x, int y) const { return labels_[index(x, y)]; }
    Label& at(int x, int y) { return labels_[index(x, y)]; }

    std::span<const Label> labels() const noexcept { return labels_; }
    std::span<Label> labels() noexcept { return labels_; }

    std::size_t count(Label label) const;
    std::size_t count_nonzero() const;
    /// Sorted distinct labels present (including 0 if present).
    std::vector<Label> alphabet() const;

    friend bool operator==(const LabeledMask&, const LabeledMask&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(size_.width) +
               static_cast<std::size_t>(x);
    }

    GridSize size_{};
    std::vector<Label> labels_;
};

/// Real-valued field on a grid (distance maps and similar).
struct RealField {
    GridSize size{};
    std::vector<double> values;

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(size.width) +
                      static_cast<std::size_t>(x)];
    }
};

/// Row-major 2x3 matrix mapping source (x, y) to destination (x, y):
///   x' = a*x + b*y + tx,  y' = c*x + d*y + ty
class AffineTransform {
public:
    AffineTransform() = default; // identity
    AffineTransform(double a, double b, double tx, double c, double d, double ty);

    static AffineTransform identity() { return {}; }
    static AffineTransform translation(double tx, double ty);
    static AffineTransform scaling(double sx, double sy);
    /// Rotation by `angle` about `center` (turns +x toward +y).
    static AffineTransform rotation_about(Point2 center, double angle);

    Point2 apply(Point2 p) const noexcept;
    double determinant() const noexcept { return a_ * d_ - b_ * c_; }
    AffineTransform inverse() const;
    /// Returns the transform that applies `first`, then *this.
    AffineTransform after(const AffineTransform& first) const noexcept;

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double tx() const noexcept { return tx_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    double ty() const noexcept { return ty_; }

    friend bool operator==(const AffineTransform&, const AffineTransform&) = default;

private:
    double a_ = 1.0, b_ = 0.0, tx_ = 0.0;
    double c_ = 0.0, d_ = 1.0, ty_ = 0.0;
};

enum class Interp { Nearest, Bilinear };

struct Resampled {
    GrayImage image;
    AffineTransform transform; // source pixel coords -> destination pixel coords
};

struct ResampledMask {
    LabeledMask mask;
    AffineTransform transform;
};

/// Rescales to `target` spacing. Output dims = round(in_dim * in_spacing / target);
/// pixel extents are aligned, so x_dst = (x_src + 0.5) * k - 0.5 with k = in/target.
/// Bilinear samples outside the source clamp to the edge.
Resampled resample(const GrayImage& img, Spacing target, Interp interp = Interp::Bilinear);
ResampledMask resample(const LabeledMask& mask, Spacing source, Spacing target);

/// Rotates about `center`; out-of-bounds source samples take `fill`.
Resampled rotate_about(const GrayImage& img, Point2 center, double angle,
                       Interp interp = Interp::Bilinear, float fill = 0.0f);
ResampledMask rotate_about(const LabeledMask& mask, Point2 center, double angle,
                           LabeledMask::Label fill = 0);

/// Warps by an arbitrary destination->source mapping into a grid of `out_size`.
GrayImage warp(const GrayImage& img, const AffineTransform& src_to_dst, GridSize out_size,
               Spacing out_spacing, Interp interp, float fill, bool clamp_edges);
LabeledMask warp(const LabeledMask& mask, const AffineTransform& src_to_dst, GridSize out_size,
                 LabeledMask::Label fill);

/// Zero-padded Gaussian smoothing; kernel radius ceil(3*sigma), weights sum to 1.
GrayImage gaussian_smooth(const GrayImage& img, double sigma);
std::vector<double> gaussian_kernel(double sigma);

/// Exact Euclidean distance (pixels) from each pixel to the nearest pixel not
/// carrying `foreground_label`. Pixels with no such pixel anywhere get +inf.
RealField distance_transform(const LabeledMask& mask, LabeledMask::Label foreground_label);
/// Same, but throws RejectedInput if the mask is entirely foreground.
RealField finite_distance_transform(const LabeledMask& mask, LabeledMask::Label foreground_label);

/// Linear-interpolation percentile, fractional rank (q/100)*(N-1).
double percentile(const GrayImage& img, double q);
double percentile(std::span<const float> values, double q);

/// Maps [min, max] onto [0, 1]; constant input becomes all zeros.
GrayImage minmax_normalize(const GrayImage& img);

GrayImage clamp_max(const GrayImage& img, float cap);

Point2 centroid(const LabeledMask& mask, LabeledMask::Label label);

/// Pixel p is 1 iff ((d.u)/r1)^2 + ((d.u_perp)/r2)^2 <= 1 with u = (cos a, sin a).
LabeledMask rasterize_ellipse(Point2 center, double r1, double r2, double angle, GridSize grid);

/// Pixels whose label is nonzero become 1.
LabeledMask binarize(const LabeledMask& mask);

} // namespace scarforge
