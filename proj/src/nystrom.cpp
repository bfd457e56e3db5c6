#include "ncode/nystrom.hpp"

#include <string>
#include <unordered_set>

namespace ncode {

Matrix pseudo_inverse(const Matrix& m, double rel_tol) {
    if (m.size() == 0) {
        return Matrix(m.cols(), m.rows());
    }
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("pseudo_inverse: SVD did not converge");
    }
    const Vector& sigma = svd.singularValues();
    const double cutoff = rel_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
    Vector inv = Vector::Zero(sigma.size());
    for (Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff && sigma(i) > 0.0) {
            inv(i) = 1.0 / sigma(i);
        }
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

namespace {

void check_indices(std::span<const Index> indices, Index n) {
    if (indices.empty()) {
        throw ArgumentError("nystrom: at least one column must be sampled");
    }
    std::unordered_set<Index> seen;
    for (const Index i : indices) {
        if (i < 0 || i >= n) {
            throw ArgumentError("nystrom: index " + std::to_string(i) + " out of range [0, " + std::to_string(n) + ")");
        }
        if (!seen.insert(i).second) {
            throw ArgumentError("nystrom: duplicate index " + std::to_string(i));
        }
    }
}

// W+ of a symmetric W is symmetric in exact arithmetic; restore it after the SVD.
Matrix symmetric_pinv(const Matrix& w, double tol) {
    Matrix p = pseudo_inverse(w, tol);
    if (w == w.transpose()) {
        p = 0.5 * (p + p.transpose()).eval();
    }
    return p;
}

NystromFactors assemble(Matrix e, std::span<const Index> indices, double pinv_tol) {
    const auto c = static_cast<Index>(indices.size());
    Matrix w(c, c);
    for (Index a = 0; a < c; ++a) {
        w.row(a) = e.row(indices[static_cast<std::size_t>(a)]);
    }
    Matrix w_pinv = symmetric_pinv(w, pinv_tol);
    return NystromFactors{std::vector<Index>(indices.begin(), indices.end()), std::move(e), std::move(w),
                          std::move(w_pinv), pinv_tol};
}

}  // namespace

NystromFactors decompose(const Matrix& c, std::span<const Index> indices, double pinv_tol) {
    if (c.rows() != c.cols()) {
        throw ArgumentError("nystrom: code matrix must be square, got " + std::to_string(c.rows()) + "x" +
                            std::to_string(c.cols()));
    }
    check_indices(indices, c.cols());
    Matrix e(c.rows(), static_cast<Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) {
        e.col(static_cast<Index>(j)) = c.col(indices[j]);
    }
    return assemble(std::move(e), indices, pinv_tol);
}

NystromFactors decompose(const CodeMatrix& c, std::span<const Index> indices, double pinv_tol) {
    return decompose(c.values(), indices, pinv_tol);
}

NystromFactors factors_from_codes(const CodeMatrix& sampled_codes, std::span<const Index> indices, double pinv_tol) {
    if (sampled_codes.atoms() != static_cast<Index>(indices.size())) {
        throw ArgumentError("nystrom: one code column per sampled index expected");
    }
    check_indices(indices, sampled_codes.samples());
    return assemble(sampled_codes.values(), indices, pinv_tol);
}

Matrix NystromFactors::lambda() const {
    const Matrix ete = E.transpose() * E;
    return W_pinv * ete * W_pinv;
}

Matrix reconstruct_code(const NystromFactors& f) { return f.E * (f.W_pinv * f.E.transpose()); }

Matrix reconstruct_kernel(const NystromFactors& f) {
    const Matrix lam = f.lambda();
    Matrix k = f.E * (lam * f.E.transpose());
    return 0.5 * (k + k.transpose());
}

ApproximationErrors approximation_errors(const Matrix& c, const Matrix& k, const NystromFactors& f) {
    if (c.rows() != f.E.rows() || k.rows() != c.rows() || k.cols() != c.rows()) {
        throw ArgumentError("approximation_errors: factors were built for a different matrix size");
    }
    return ApproximationErrors{(c - reconstruct_code(f)).norm(), (k - reconstruct_kernel(f)).norm()};
}

ApproximationErrors approximation_errors(const Matrix& c, const NystromFactors& f) {
    return approximation_errors(c, gram_kernel(c), f);
}

ApproximationErrors approximation_errors(const CodeMatrix& c, const NystromFactors& f) {
    return approximation_errors(c.values(), f);
}

}  // namespace ncode
