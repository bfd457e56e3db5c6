#pragma once

#include "ncode/data.hpp"
#include "ncode/types.hpp"

#include <span>
#include <vector>

namespace ncode {

inline constexpr double kDefaultAlpha = 0.25;

enum class DictionarySource { sampled, kmeans, kcenters };

/// d x c codebook plus where its atoms came from. For sampled and kcenters
/// dictionaries, `indices()` holds the distinct source indices in atom order.
class Dictionary {
  public:
    Dictionary(Matrix atoms, DictionarySource source, std::vector<Index> indices = {});

    /// Atoms are the training columns `indices` of x, in that order.
    static Dictionary from_samples(const DataMatrix& x, std::span<const Index> indices);

    [[nodiscard]] const Matrix& atoms() const noexcept { return atoms_; }
    [[nodiscard]] Index dim() const noexcept { return atoms_.rows(); }
    [[nodiscard]] Index size() const noexcept { return atoms_.cols(); }
    [[nodiscard]] DictionarySource source() const noexcept { return source_; }
    [[nodiscard]] const std::vector<Index>& indices() const noexcept { return indices_; }

  private:
    Matrix atoms_;
    DictionarySource source_;
    std::vector<Index> indices_;
};

/// Scales every non-zero atom to unit Euclidean norm.
[[nodiscard]] Dictionary normalize_atoms(const Dictionary& dict);

/// N x c non-negative codes, row i encodes sample i.
class CodeMatrix {
  public:
    CodeMatrix(Matrix values, double alpha);

    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] Index samples() const noexcept { return values_.rows(); }
    [[nodiscard]] Index atoms() const noexcept { return values_.cols(); }

  private:
    Matrix values_;
    double alpha_;
};

/// Threshold encoding: entry (i, j) = max(0, <x_i, d_j> - alpha).
[[nodiscard]] CodeMatrix encode(const DataMatrix& x, const Dictionary& dict, double alpha);
[[nodiscard]] CodeMatrix encode(const Matrix& samples, const Matrix& atoms, double alpha);

/// Codes of the training set against itself, C = max(0, X^T X - alpha). Exactly symmetric.
[[nodiscard]] CodeMatrix full_code(const DataMatrix& x, double alpha);

/// K = C C^T, exactly symmetric.
[[nodiscard]] Matrix gram_kernel(const CodeMatrix& codes);
[[nodiscard]] Matrix gram_kernel(const Matrix& codes);

}  // namespace ncode
