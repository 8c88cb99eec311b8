#include "scarforge/contrastive.hpp"

#include "scarforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scarforge {

namespace {

void check_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x))
            fail(ErrorKind::Argument, "embedding contains a non-finite value");
}

double log_sum_exp(std::span<const double> xs) {
    const double m = *std::max_element(xs.begin(), xs.end());
    double acc = 0.0;
    for (double x : xs)
        acc += std::exp(x - m);
    return m + std::log(acc);
}

} // namespace

Embedding l2_normalize(std::span<const double> v) {
    check_finite(v);
    if (v.empty())
        fail(ErrorKind::Argument, "cannot normalise an empty embedding");
    // Scale first so huge or tiny entries don't overflow the sum of squares.
    double scale = 0.0;
    for (double x : v)
        scale = std::max(scale, std::abs(x));
    if (scale == 0.0)
        fail(ErrorKind::Argument, "cannot normalise a zero vector");
    double ss = 0.0;
    for (double x : v)
        ss += (x / scale) * (x / scale);
    const double norm = scale * std::sqrt(ss);
    Embedding out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [norm](double x) { return x / norm; });
    return out;
}

double similarity(std::span<const double> v, std::span<const double> t) {
    if (v.size() != t.size())
        fail(ErrorKind::Argument, "embedding dimensions differ");
    const Embedding vn = l2_normalize(v);
    const Embedding tn = l2_normalize(t);
    const double s = std::inner_product(vn.begin(), vn.end(), tn.begin(), 0.0);
    return std::clamp(s, -1.0, 1.0);
}

std::vector<std::vector<double>> logits(const EmbeddingBatch& batch, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        fail(ErrorKind::Argument, "temperature must be positive and finite");
    const std::size_t n = batch.images.size();
    if (batch.texts.size() != n)
        fail(ErrorKind::Argument, "image and text batches differ in size");
    std::vector<Embedding> vs, ts;
    vs.reserve(n);
    ts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (batch.images[i].size() != batch.images.front().size() ||
            batch.texts[i].size() != batch.images.front().size())
            fail(ErrorKind::Argument, "embedding dimension varies within the batch");
        vs.push_back(l2_normalize(batch.images[i]));
        ts.push_back(l2_normalize(batch.texts[i]));
    }
    std::vector<std::vector<double>> s(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s[i][j] = std::inner_product(vs[i].begin(), vs[i].end(), ts[j].begin(), 0.0) / tau;
    return s;
}

double clip_loss(const EmbeddingBatch& batch, double tau) {
    if (batch.images.size() < 2)
        fail(ErrorKind::Argument, "contrastive loss needs at least two pairs");
    const auto s = logits(batch, tau);
    const std::size_t n = s.size();
    double rows = 0.0, cols = 0.0;
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows += log_sum_exp(s[i]) - s[i][i];
        for (std::size_t k = 0; k < n; ++k)
            column[k] = s[k][i];
        cols += log_sum_exp(column) - s[i][i];
    }
    return 0.5 * (rows / n + cols / n);
}

ZeroShotDecision zero_shot_decide(std::span<const double> image, std::span<const double> positive_text,
                                  std::span<const double> negative_text) {
    const double s_pos = similarity(image, positive_text);
    const double s_neg = similarity(image, negative_text);
    return {s_pos > s_neg ? ClassLabel::Positive : ClassLabel::Negative, s_pos - s_neg};
}

double balanced_accuracy(std::span<const ClassLabel> predictions, std::span<const ClassLabel> truth) {
    if (predictions.size() != truth.size())
        fail(ErrorKind::Argument, "prediction and truth sequences differ in length");
    std::size_t tp = 0, fn = 0, tn = 0, fp = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool pred_pos = predictions[i] == ClassLabel::Positive;
        if (truth[i] == ClassLabel::Positive)
            (pred_pos ? tp : fn)++;
        else
            (pred_pos ? fp : tn)++;
    }
    if (tp + fn == 0 || tn + fp == 0)
        fail(ErrorKind::UndefinedMetric, "balanced accuracy needs both classes in the ground truth");
    const double recall_pos = static_cast<double>(tp) / static_cast<double>(tp + fn);
    const double recall_neg = static_cast<double>(tn) / static_cast<double>(tn + fp);
    return 0.5 * (recall_pos + recall_neg);
}

} // namespace scarforge
