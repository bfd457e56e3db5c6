#include "ncode/coding.hpp"

#include "ncode/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace ncode {

Dictionary::Dictionary(Matrix atoms, DictionarySource source, std::vector<Index> indices)
    : atoms_(std::move(atoms)), source_(source), indices_(std::move(indices)) {
    if (atoms_.cols() < 1 || atoms_.rows() < 1) {
        throw ArgumentError("dictionary needs at least one atom");
    }
    if (!atoms_.allFinite()) {
        throw ArgumentError("dictionary atoms must be finite");
    }
    if (source_ != DictionarySource::kmeans) {
        if (static_cast<Index>(indices_.size()) != atoms_.cols()) {
            throw ArgumentError("dictionary: expected one source index per atom");
        }
        std::unordered_set<Index> seen;
        for (const Index i : indices_) {
            if (i < 0 || !seen.insert(i).second) {
                throw ArgumentError("dictionary: source indices must be distinct and non-negative");
            }
        }
    }
}

Dictionary Dictionary::from_samples(const DataMatrix& x, std::span<const Index> indices) {
    for (const Index i : indices) {
        if (i < 0 || i >= x.size()) {
            throw ArgumentError("dictionary index " + std::to_string(i) + " out of range [0, " +
                                std::to_string(x.size()) + ")");
        }
    }
    return Dictionary{x.select(indices).values(), DictionarySource::sampled,
                      std::vector<Index>(indices.begin(), indices.end())};
}

Dictionary normalize_atoms(const Dictionary& dict) {
    Matrix atoms = dict.atoms();
    for (Index j = 0; j < atoms.cols(); ++j) {
        const double norm = atoms.col(j).norm();
        if (norm > 0.0) {
            atoms.col(j) /= norm;
        }
    }
    return Dictionary{std::move(atoms), dict.source(), dict.indices()};
}

CodeMatrix::CodeMatrix(Matrix values, double alpha) : values_(std::move(values)), alpha_(alpha) {
    if (!std::isfinite(alpha_)) {
        throw ArgumentError("threshold alpha must be finite");
    }
    if (values_.size() > 0 && values_.minCoeff() < 0.0) {
        throw ArgumentError("code matrix entries must be non-negative");
    }
}

CodeMatrix encode(const Matrix& samples, const Matrix& atoms, double alpha) {
    if (samples.rows() != atoms.rows()) {
        throw ArgumentError("encode: sample dimension " + std::to_string(samples.rows()) +
                            " does not match atom dimension " + std::to_string(atoms.rows()));
    }
    if (!std::isfinite(alpha)) {
        throw ArgumentError("encode: alpha must be finite");
    }
    Matrix out(samples.cols(), atoms.cols());
    simd::active().threshold_products(samples.data(), static_cast<std::size_t>(samples.cols()), atoms.data(),
                                      static_cast<std::size_t>(atoms.cols()), static_cast<std::size_t>(samples.rows()),
                                      alpha, true, out.data());
    return CodeMatrix{std::move(out), alpha};
}

CodeMatrix encode(const DataMatrix& x, const Dictionary& dict, double alpha) {
    return encode(x.values(), dict.atoms(), alpha);
}

CodeMatrix full_code(const DataMatrix& x, double alpha) { return encode(x.values(), x.values(), alpha); }

Matrix gram_kernel(const Matrix& codes) {
    // Rows of the code matrix become contiguous columns.
    const Matrix rows = codes.transpose();
    const auto n = static_cast<std::size_t>(codes.rows());
    Matrix out(codes.rows(), codes.rows());
    simd::active().gram(rows.data(), n, static_cast<std::size_t>(codes.cols()), out.data());
    return out;
}

Matrix gram_kernel(const CodeMatrix& codes) { return gram_kernel(codes.values()); }

}  // namespace ncode
