#pragma once

#include "ncode/types.hpp"

namespace ncode {

inline constexpr double kDefaultEnergy = 0.95;

/// Quantities entering the Nystrom column-sampling bound for one matrix C.
struct SpectralReport {
    Index k = 0;
    double energy = kDefaultEnergy;  ///< energy fraction used to pick k
    double rank_k_residual = 0.0;    ///< ||C - C_k||_F
    double scaled_diag_max = 0.0;    ///< N * max_i C_ii
    Vector singular_values;          ///< descending
};

/// Singular values, descending. Throws NumericalError on SVD failure.
[[nodiscard]] Vector singular_values(const Matrix& c);

/// Best rank-k approximation C_k from the truncated SVD.
[[nodiscard]] Matrix truncated_svd(const Matrix& c, Index k);

[[nodiscard]] double rank_k_residual(const Matrix& c, Index k);
[[nodiscard]] double rank_k_residual_from(const Vector& singular_values, Index k);

[[nodiscard]] double scaled_diag_max(const Matrix& c);

/// Smallest k whose top-k squared singular values hold `energy` of the total.
/// A zero matrix has effective rank 0.
[[nodiscard]] Index effective_rank(const Matrix& c, double energy);
[[nodiscard]] Index effective_rank_from(const Vector& singular_values, double energy);

/// k = effective_rank(C, energy) together with the residual and diagonal term.
[[nodiscard]] SpectralReport spectral_report(const Matrix& c, double energy = kDefaultEnergy);

}  // namespace ncode
