#include "ncode/nystrom.hpp"

#include "ncode/dictionary.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

using namespace ncode;

namespace {

using fixtures::random_psd;
using fixtures::relative_error;

Index numeric_rank(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    svd.setThreshold(1e-10);
    return svd.rank();
}

TEST(Decompose, AllOnesSingleIndex) {
    const std::vector<Index> idx{0};
    const NystromFactors f = decompose(Matrix::Ones(3, 3), idx);
    EXPECT_EQ(f.E, Matrix::Ones(3, 1));
    EXPECT_EQ(f.W, Matrix::Ones(1, 1));
    EXPECT_NEAR(f.W_pinv(0, 0), 1.0, 1e-15);
    EXPECT_LE((reconstruct_code(f) - Matrix::Ones(3, 3)).norm(), 1e-12);
}

TEST(Decompose, FullSamplingReturnsC) {
    std::mt19937_64 rng(1);
    const Matrix c = random_psd(5, 5, rng);
    const std::vector<Index> idx{0, 1, 2, 3, 4};
    const NystromFactors f = decompose(c, idx);
    EXPECT_EQ(f.E, c);
    EXPECT_EQ(f.W, c);
    EXPECT_LE(relative_error(reconstruct_code(f), c), 1e-10);
    EXPECT_LE(relative_error(reconstruct_kernel(f), c * c.transpose()), 1e-8);
}

TEST(Decompose, SubblockSlicing) {
    std::mt19937_64 rng(2);
    const Matrix c = random_psd(6, 6, rng);
    const std::vector<Index> idx{1, 4};
    const NystromFactors f = decompose(c, idx);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            EXPECT_EQ(f.W(a, b), c(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]));
        }
    }
    EXPECT_LE((f.W_pinv - f.W_pinv.transpose()).norm(), 1e-10 * f.W_pinv.norm());
}

TEST(Decompose, Errors) {
    const std::vector<Index> dup{1, 1};
    const std::vector<Index> none{};
    const std::vector<Index> out{3};
    const std::vector<Index> ok{0};
    EXPECT_THROW((void)decompose(Matrix::Identity(3, 3), dup), ArgumentError);
    EXPECT_THROW((void)decompose(Matrix::Identity(3, 3), none), ArgumentError);
    EXPECT_THROW((void)decompose(Matrix::Identity(3, 3), out), ArgumentError);
    EXPECT_THROW((void)decompose(Matrix::Ones(3, 2), ok), ArgumentError);
}

TEST(ReconstructCode, RankTwoExactWhenSpanning) {
    std::mt19937_64 rng(3);
    const Matrix c = random_psd(5, 2, rng);
    const std::vector<Index> idx{0, 3};
    const NystromFactors f = decompose(c, idx);
    ASSERT_EQ(numeric_rank(f.W), 2);
    EXPECT_LE((c - reconstruct_code(f)).norm(), 1e-9 * c.norm());
}

TEST(ReconstructKernel, RankOneCase) {
    Vector v(4);
    v << 2, -1, 0.5, 3;
    const Matrix c = v * v.transpose();
    const std::vector<Index> idx{0};
    const NystromFactors f = decompose(c, idx);
    const Matrix expected = v.squaredNorm() * c;
    EXPECT_LE(relative_error(reconstruct_kernel(f), expected), 1e-12);
}

TEST(ReconstructKernel, SymmetricPsd) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix c = fixtures::random_matrix(12, 12, rng);
        c = (0.5 * (c + c.transpose())).eval();  // indefinite on purpose
        const auto idx = sample_indices(12, 5, static_cast<Seed>(trial));
        const Matrix k = reconstruct_kernel(decompose(c, idx));
        EXPECT_EQ(k, k.transpose());
        const Eigen::SelfAdjointEigenSolver<Matrix> eig(k);
        EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-8 * eig.eigenvalues().maxCoeff());
    }
}

TEST(ReconstructKernel, EqualsGramOfReconstructedCode) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix c = fixtures::random_matrix(20, 20, rng);
        c = (trial % 2 == 0) ? Matrix(0.5 * (c + c.transpose())) : random_psd(20, 6, rng);
        const NystromFactors f = decompose(c, sample_indices(20, 4 + trial, static_cast<Seed>(trial)));
        const Matrix cp = reconstruct_code(f);
        EXPECT_LE(relative_error(reconstruct_kernel(f), gram_kernel(cp)), 1e-8);
    }
}

TEST(ApproximationErrors, IdentityTwoByTwo) {
    const std::vector<Index> idx{0};
    const Matrix c = Matrix::Identity(2, 2);
    const ApproximationErrors e = approximation_errors(c, decompose(c, idx));
    EXPECT_NEAR(e.code_err, 1.0, 1e-15);
    EXPECT_NEAR(e.kernel_err, 1.0, 1e-15);
}

TEST(ApproximationErrors, ExactRecoveryNearZero) {
    std::mt19937_64 rng(6);
    const Matrix c = random_psd(8, 3, rng);
    const NystromFactors f = decompose(c, std::vector<Index>{1, 2, 6});
    ASSERT_EQ(numeric_rank(f.W), 3);
    const ApproximationErrors e = approximation_errors(c, f);
    EXPECT_GE(e.code_err, 0.0);
    EXPECT_LE(e.code_err, 1e-9 * c.norm());
    EXPECT_LE(e.kernel_err, 1e-9 * (c * c).norm());
}

TEST(NystromProperty, SliceConsistency) {
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix c = random_psd(16, 16, rng);
        const auto idx = sample_indices(16, 1 + trial % 10, static_cast<Seed>(trial));
        const NystromFactors f = decompose(c, idx);
        if (numeric_rank(f.W) < static_cast<Index>(idx.size())) {
            continue;
        }
        ++checked;
        const Matrix cp = reconstruct_code(f);
        for (const Index i : idx) {
            EXPECT_LE((cp.row(i) - c.row(i)).norm(), 1e-9 * c.row(i).norm());
        }
    }
    EXPECT_GT(checked, 40);
}

TEST(NystromProperty, ExactRecoveryForLowRank) {
    std::mt19937_64 rng(8);
    for (Index r = 1; r <= 5; ++r) {
        const Matrix c = random_psd(24, r, rng);
        const auto idx = sample_indices(24, r, static_cast<Seed>(r));
        const NystromFactors f = decompose(c, idx);
        ASSERT_EQ(numeric_rank(f.W), r);
        EXPECT_LE((c - reconstruct_code(f)).norm(), 1e-8 * c.norm());
    }
}

TEST(NystromProperty, MeanErrorDecaysWithColumns) {
    std::mt19937_64 rng(9);
    Matrix a = fixtures::random_matrix(64, 64, rng);
    // decaying spectrum so every c in the sweep matters
    for (Index j = 0; j < 64; ++j) {
        a.col(j) *= std::pow(0.85, static_cast<double>(j));
    }
    const Matrix c = a * a.transpose();
    std::vector<double> means;
    for (const Index cols : {2, 4, 8, 16}) {
        double total = 0.0;
        for (Seed seed = 0; seed < 20; ++seed) {
            total += approximation_errors(c, decompose(c, sample_indices(64, cols, seed))).code_err;
        }
        means.push_back(total / 20.0);
    }
    int inversions = 0;
    for (std::size_t i = 1; i < means.size(); ++i) {
        if (means[i] > means[i - 1]) {
            ++inversions;
            EXPECT_LE(means[i], 1.02 * means[i - 1]);
        }
    }
    EXPECT_LE(inversions, 1);
}

TEST(FactorsFromCodes, MatchesDecomposeOfFullCode) {
    std::mt19937_64 rng(10);
    const DataMatrix x{fixtures::random_matrix(6, 40, rng)};
    const CodeMatrix full = full_code(x, 0.25);
    const auto idx = sample_indices(40, 7, 3);
    const CodeMatrix sampled = encode(x, Dictionary::from_samples(x, idx), 0.25);
    const NystromFactors a = factors_from_codes(sampled, idx);
    const NystromFactors b = decompose(full, idx);
    EXPECT_EQ(a.E, b.E);
    EXPECT_EQ(a.W, b.W);
    EXPECT_EQ(a.W_pinv, b.W_pinv);
}

TEST(PseudoInverse, DropsTinySingularValues) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 1e-14;
    const Matrix p = pseudo_inverse(m, 1e-10);
    EXPECT_NEAR(p(0, 0), 0.5, 1e-15);
    EXPECT_EQ(p(1, 1), 0.0);
}

}  // namespace
