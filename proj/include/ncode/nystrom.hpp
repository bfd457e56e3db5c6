#pragma once

#include "ncode/coding.hpp"
#include "ncode/types.hpp"

#include <span>
#include <vector>

namespace ncode {

inline constexpr double kDefaultPinvTolerance = 1e-10;

/// Sampled columns E = C[:, S], the square block W = C[S, S] and its
/// pseudo-inverse. The approximation is C' = E W+ E^T.
struct NystromFactors {
    std::vector<Index> indices;
    Matrix E;
    Matrix W;
    Matrix W_pinv;
    double pinv_tol = kDefaultPinvTolerance;

    /// Lambda = W+ (E^T E) W+, so that K' = E Lambda E^T.
    [[nodiscard]] Matrix lambda() const;
};

/// SVD pseudo-inverse; singular values below rel_tol * sigma_max are dropped.
[[nodiscard]] Matrix pseudo_inverse(const Matrix& m, double rel_tol);

[[nodiscard]] NystromFactors decompose(const Matrix& c, std::span<const Index> indices,
                                       double pinv_tol = kDefaultPinvTolerance);
[[nodiscard]] NystromFactors decompose(const CodeMatrix& c, std::span<const Index> indices,
                                       double pinv_tol = kDefaultPinvTolerance);

/// Factors built from codes against a dictionary of training samples
/// `indices`. Those codes are exactly the columns `indices` of the full
/// code matrix, so this equals decompose(full_code(X), indices) without
/// forming the N x N matrix.
[[nodiscard]] NystromFactors factors_from_codes(const CodeMatrix& sampled_codes, std::span<const Index> indices,
                                                double pinv_tol = kDefaultPinvTolerance);

/// C' = E W+ E^T.
[[nodiscard]] Matrix reconstruct_code(const NystromFactors& f);

/// K' = E Lambda E^T, computed without forming C'.
[[nodiscard]] Matrix reconstruct_kernel(const NystromFactors& f);

struct ApproximationErrors {
    double code_err = 0.0;    ///< ||C - C'||_F
    double kernel_err = 0.0;  ///< ||C C^T - K'||_F
};

[[nodiscard]] ApproximationErrors approximation_errors(const Matrix& c, const NystromFactors& f);
[[nodiscard]] ApproximationErrors approximation_errors(const CodeMatrix& c, const NystromFactors& f);
/// Same, with K = C C^T already computed.
[[nodiscard]] ApproximationErrors approximation_errors(const Matrix& c, const Matrix& k, const NystromFactors& f);

}  // namespace ncode
