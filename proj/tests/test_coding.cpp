#include "ncode/coding.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ncode;

namespace {

// Entry-by-entry oracle, no shared code with the SIMD path.
Matrix encode_oracle(const Matrix& x, const Matrix& d, double alpha) {
    Matrix out(x.cols(), d.cols());
    for (Index i = 0; i < x.cols(); ++i) {
        for (Index j = 0; j < d.cols(); ++j) {
            double s = 0.0;
            for (Index k = 0; k < x.rows(); ++k) {
                s += x(k, i) * d(k, j);
            }
            out(i, j) = std::max(0.0, s - alpha);
        }
    }
    return out;
}

TEST(Encode, UnitVectorAgainstIdentity) {
    Matrix x(2, 1);
    x << 1, 0;
    const CodeMatrix c = encode(DataMatrix{x}, Dictionary{Matrix::Identity(2, 2), DictionarySource::kmeans}, 0.5);
    EXPECT_EQ(c.values().rows(), 1);
    EXPECT_DOUBLE_EQ(c.values()(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(c.values()(0, 1), 0.0);
}

TEST(Encode, DominantThresholdGivesZeros) {
    std::mt19937_64 rng(1);
    const Matrix x = fixtures::random_matrix(4, 7, rng);
    const Matrix d = fixtures::random_matrix(4, 3, rng);
    const double alpha = (x.transpose() * d).maxCoeff();
    EXPECT_EQ(encode(x, d, alpha).values(), Matrix::Zero(7, 3));
}

TEST(Encode, MatchesScalarLoopOracle) {
    std::mt19937_64 rng(2);
    const Matrix x = fixtures::random_matrix(4, 6, rng);
    const Matrix d = fixtures::random_matrix(4, 3, rng);
    const CodeMatrix c = encode(x, d, 0.1);
    EXPECT_LE((c.values() - encode_oracle(x, d, 0.1)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(c.alpha(), 0.1);
}

TEST(Encode, DimensionMismatch) {
    EXPECT_THROW((void)encode(Matrix::Ones(3, 2), Matrix::Ones(4, 2), 0.0), ArgumentError);
}

TEST(Encode, NonNegativeAndMonotoneInAlpha) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix x = fixtures::random_matrix(5, 8, rng);
        const Matrix d = fixtures::random_matrix(5, 4, rng);
        const Matrix low = encode(x, d, -0.5 + 0.1 * trial).values();
        const Matrix high = encode(x, d, 0.5 + 0.1 * trial).values();
        EXPECT_GE(low.minCoeff(), 0.0);
        EXPECT_TRUE((high.array() <= low.array()).all());
    }
}

TEST(FullCode, OrthonormalSamples) {
    const DataMatrix x{Matrix::Identity(2, 2)};
    EXPECT_EQ(full_code(x, 0.0).values(), Matrix::Identity(2, 2));
    EXPECT_EQ(full_code(x, 0.5).values(), 0.5 * Matrix::Identity(2, 2));
}

TEST(FullCode, SymmetricAndEqualToSelfEncoding) {
    std::mt19937_64 rng(4);
    const DataMatrix x{fixtures::random_matrix(3, 5, rng)};
    const Matrix c = full_code(x, 0.2).values();
    EXPECT_LE((c - c.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    std::vector<Index> all{0, 1, 2, 3, 4};
    EXPECT_EQ(c, encode(x, Dictionary::from_samples(x, all), 0.2).values());
}

TEST(FullCode, ExactlySymmetricOnLargerData) {
    std::mt19937_64 rng(5);
    const DataMatrix x{fixtures::random_matrix(37, 60, rng)};
    const Matrix c = full_code(x, 0.1).values();
    EXPECT_EQ(c, c.transpose());
}

TEST(FullCode, SampledDictionaryReproducesColumns) {
    std::mt19937_64 rng(6);
    const DataMatrix x{fixtures::random_matrix(9, 30, rng)};
    const Matrix full = full_code(x, 0.25).values();
    const std::vector<Index> s{2, 7, 11, 29};
    const Matrix e = encode(x, Dictionary::from_samples(x, s), 0.25).values();
    for (std::size_t j = 0; j < s.size(); ++j) {
        EXPECT_EQ(e.col(static_cast<Index>(j)), full.col(s[j]));
    }
}

TEST(GramKernel, Identity) { EXPECT_EQ(gram_kernel(Matrix::Identity(3, 3)), Matrix::Identity(3, 3)); }

TEST(GramKernel, SingleColumnIsOuterProduct) {
    Vector v(4);
    v << 1, 2, 0, 3;
    EXPECT_LE((gram_kernel(Matrix(v)) - v * v.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(GramKernel, RandomIsSymmetricPsd) {
    std::mt19937_64 rng(7);
    const Matrix c = fixtures::random_matrix(5, 4, rng).cwiseAbs();
    const Matrix k = gram_kernel(c);
    EXPECT_EQ(k, k.transpose());
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(k);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10);
}

TEST(Dictionary, RejectsDuplicateOrOutOfRangeIndices) {
    const DataMatrix x{Matrix::Identity(3, 3)};
    const std::vector<Index> dup{0, 0};
    const std::vector<Index> out{0, 3};
    EXPECT_THROW((void)Dictionary::from_samples(x, dup), ArgumentError);
    EXPECT_THROW((void)Dictionary::from_samples(x, out), ArgumentError);
    EXPECT_THROW((Dictionary{Matrix(3, 0), DictionarySource::kmeans}), ArgumentError);
}

TEST(Dictionary, NormalizeAtomsKeepsZeroAtoms) {
    Matrix atoms(2, 2);
    atoms << 3, 0, 4, 0;
    const Dictionary d = normalize_atoms(Dictionary{atoms, DictionarySource::kmeans});
    EXPECT_DOUBLE_EQ(d.atoms()(0, 0), 0.6);
    EXPECT_EQ(d.atoms().col(1), Vector::Zero(2));
}

}  // namespace
