#pragma once

#include "ncode/coding.hpp"
#include "ncode/types.hpp"

#include <span>
#include <vector>

namespace ncode {

/// One-vs-rest linear scorer: scores = features * weights + bias.
struct LinearModel {
    Matrix weights;  ///< c x L
    Vector bias;     ///< L
    double lambda = 0.0;

    [[nodiscard]] Index features() const noexcept { return weights.rows(); }
    [[nodiscard]] Index classes() const noexcept { return weights.cols(); }
};

/// Ridge regression onto {-1, +1} targets for every class. The bias is an
/// appended constant feature and is not penalised:
///   (A^T A + lambda diag(1, ..., 1, 0)) w = A^T y,  A = [features, 1].
[[nodiscard]] LinearModel train_ridge(const Matrix& features, std::span<const int> labels, int num_classes,
                                      double lambda);
[[nodiscard]] LinearModel train_ridge(const CodeMatrix& codes, std::span<const int> labels, int num_classes,
                                      double lambda);

/// N x L class scores.
[[nodiscard]] Matrix decision_scores(const LinearModel& model, const Matrix& features);

/// Arg-max class per row; ties go to the lowest class index.
[[nodiscard]] std::vector<int> predict_labels(const Matrix& scores);
[[nodiscard]] std::vector<int> predict(const LinearModel& model, const Matrix& features);
[[nodiscard]] std::vector<int> predict(const LinearModel& model, const CodeMatrix& codes);

/// Fraction of positions where pred == truth.
[[nodiscard]] double accuracy(std::span<const int> pred, std::span<const int> truth);

}  // namespace ncode
