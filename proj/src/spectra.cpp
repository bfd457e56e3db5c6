#include "ncode/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ncode {

Vector singular_values(const Matrix& c) {
    if (c.size() == 0) {
        return Vector{};
    }
    Eigen::BDCSVD<Matrix> svd(c);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("SVD did not converge");
    }
    return svd.singularValues();
}

Matrix truncated_svd(const Matrix& c, Index k) {
    if (k < 0 || k > std::min(c.rows(), c.cols())) {
        throw ArgumentError("truncated_svd: rank out of range");
    }
    Eigen::BDCSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("SVD did not converge");
    }
    return svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal() *
           svd.matrixV().leftCols(k).transpose();
}

double rank_k_residual_from(const Vector& sv, Index k) {
    if (k < 0 || k > sv.size()) {
        throw ArgumentError("rank_k_residual: k=" + std::to_string(k) + " outside [0, " + std::to_string(sv.size()) +
                            "]");
    }
    return sv.tail(sv.size() - k).norm();
}

double rank_k_residual(const Matrix& c, Index k) {
    if (k < 0 || k > std::min(c.rows(), c.cols())) {
        throw ArgumentError("rank_k_residual: k=" + std::to_string(k) + " out of range");
    }
    return rank_k_residual_from(singular_values(c), k);
}

double scaled_diag_max(const Matrix& c) {
    if (c.rows() != c.cols() || c.rows() == 0) {
        throw ArgumentError("scaled_diag_max: matrix must be square and non-empty");
    }
    return static_cast<double>(c.rows()) * c.diagonal().maxCoeff();
}

Index effective_rank_from(const Vector& sv, double energy) {
    if (!(energy > 0.0 && energy <= 1.0)) {
        throw ArgumentError("effective_rank: energy must lie in (0, 1]");
    }
    const double total = sv.squaredNorm();
    if (total == 0.0) {
        return 0;
    }
    // Relative slack so that energy = 1 is reached despite summation rounding.
    const double target = energy * total * (1.0 - 1e-12);
    double running = 0.0;
    for (Index k = 0; k < sv.size(); ++k) {
        running += sv(k) * sv(k);
        if (running >= target) {
            return k + 1;
        }
    }
    return sv.size();
}

Index effective_rank(const Matrix& c, double energy) { return effective_rank_from(singular_values(c), energy); }

SpectralReport spectral_report(const Matrix& c, double energy) {
    SpectralReport report;
    report.energy = energy;
    report.singular_values = singular_values(c);
    report.k = effective_rank_from(report.singular_values, energy);
    report.rank_k_residual = rank_k_residual_from(report.singular_values, report.k);
    report.scaled_diag_max = scaled_diag_max(c);
    return report;
}

}  // namespace ncode
