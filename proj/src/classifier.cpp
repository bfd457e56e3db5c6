#include "ncode/classifier.hpp"

#include <cmath>
#include <string>

namespace ncode {

LinearModel train_ridge(const Matrix& features, std::span<const int> labels, int num_classes, double lambda) {
    const Index n = features.rows();
    const Index c = features.cols();
    if (num_classes < 2) {
        throw ArgumentError("train_ridge: need at least two classes");
    }
    if (static_cast<Index>(labels.size()) != n) {
        throw ArgumentError("train_ridge: " + std::to_string(labels.size()) + " labels for " + std::to_string(n) +
                            " feature rows");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ArgumentError("train_ridge: lambda must be a finite value > 0");
    }
    Matrix targets = Matrix::Constant(n, num_classes, -1.0);
    for (Index i = 0; i < n; ++i) {
        const int y = labels[static_cast<std::size_t>(i)];
        if (y < 0 || y >= num_classes) {
            throw ArgumentError("train_ridge: label " + std::to_string(y) + " outside [0, " +
                                std::to_string(num_classes) + ")");
        }
        targets(i, y) = 1.0;
    }

    Matrix augmented(n, c + 1);
    augmented.leftCols(c) = features;
    augmented.col(c).setOnes();

    Matrix normal = augmented.transpose() * augmented;
    normal.diagonal().head(c).array() += lambda;
    const Eigen::LDLT<Matrix> solver(normal);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("train_ridge: normal equations could not be factorised");
    }
    const Matrix solution = solver.solve(augmented.transpose() * targets);
    if (!solution.allFinite()) {
        throw NumericalError("train_ridge: non-finite solution");
    }
    return LinearModel{solution.topRows(c), solution.row(c).transpose(), lambda};
}

LinearModel train_ridge(const CodeMatrix& codes, std::span<const int> labels, int num_classes, double lambda) {
    return train_ridge(codes.values(), labels, num_classes, lambda);
}

Matrix decision_scores(const LinearModel& model, const Matrix& features) {
    if (features.cols() != model.features()) {
        throw ArgumentError("predict: model expects " + std::to_string(model.features()) + " features, got " +
                            std::to_string(features.cols()));
    }
    Matrix scores = features * model.weights;
    scores.rowwise() += model.bias.transpose();
    return scores;
}

std::vector<int> predict_labels(const Matrix& scores) {
    std::vector<int> out(static_cast<std::size_t>(scores.rows()));
    for (Index i = 0; i < scores.rows(); ++i) {
        Index best = 0;
        for (Index j = 1; j < scores.cols(); ++j) {
            if (scores(i, j) > scores(i, best)) {
                best = j;
            }
        }
        out[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return out;
}

std::vector<int> predict(const LinearModel& model, const Matrix& features) {
    return predict_labels(decision_scores(model, features));
}

std::vector<int> predict(const LinearModel& model, const CodeMatrix& codes) { return predict(model, codes.values()); }

double accuracy(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size()) {
        throw ArgumentError("accuracy: " + std::to_string(pred.size()) + " predictions for " +
                            std::to_string(truth.size()) + " labels");
    }
    if (pred.empty()) {
        throw ArgumentError("accuracy: empty label vectors");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        hits += pred[i] == truth[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

}  // namespace ncode
