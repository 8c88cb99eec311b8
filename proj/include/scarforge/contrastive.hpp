#pragma once

#include "scarforge/captions.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace scarforge {

/// Real vector produced by an external encoder/projection head.
using Embedding = std::vector<double>;

/// Row i of `images` is paired with row i of `texts`.
struct EmbeddingBatch {
    std::vector<Embedding> images;
    std::vector<Embedding> texts;
};

Embedding l2_normalize(std::span<const double> v);

/// Cosine similarity: dot product of the L2-normalised vectors.
double similarity(std::span<const double> v, std::span<const double> t);

/// Symmetric CLIP loss: half the sum of the mean row-wise and mean
/// column-wise softmax cross-entropies of S[i][j] = similarity(v_i, t_j) / tau.
double clip_loss(const EmbeddingBatch& batch, double tau = 0.07);

/// Similarity matrix S[i][j] = similarity(images[i], texts[j]) / tau.
std::vector<std::vector<double>> logits(const EmbeddingBatch& batch, double tau);

struct ZeroShotDecision {
    ClassLabel label;
    double margin; // s_pos - s_neg
};

/// Positive iff similarity to the positive prompt strictly exceeds the
/// negative one; exact ties go to the negative class.
ZeroShotDecision zero_shot_decide(std::span<const double> image, std::span<const double> positive_text,
                                  std::span<const double> negative_text);

/// Mean of per-class recall. Throws UndefinedMetric if `truth` lacks a class.
double balanced_accuracy(std::span<const ClassLabel> predictions, std::span<const ClassLabel> truth);

} // namespace scarforge
