#include "ncode/dictionary.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

using namespace ncode;

namespace {

TEST(SampleIndices, FullSampleIsEveryIndex) {
    for (Seed seed : {0ULL, 1ULL, 12345ULL}) {
        EXPECT_EQ(sample_indices(5, 5, seed), (std::vector<Index>{0, 1, 2, 3, 4}));
    }
}

TEST(SampleIndices, SingleIndexInRange) {
    const auto s = sample_indices(5, 1, 0);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_GE(s[0], 0);
    EXPECT_LT(s[0], 5);
}

TEST(SampleIndices, DeterministicSortedDistinct) {
    const auto a = sample_indices(1000, 100, 42);
    EXPECT_EQ(a, sample_indices(1000, 100, 42));
    EXPECT_NE(a, sample_indices(1000, 100, 43));
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_EQ(std::set<Index>(a.begin(), a.end()).size(), 100u);
}

TEST(SampleIndices, MarginalUniformity) {
    std::vector<int> counts(10, 0);
    for (Seed seed = 0; seed < 10000; ++seed) {
        ++counts[static_cast<std::size_t>(sample_indices(10, 1, seed)[0])];
    }
    const double sigma = std::sqrt(10000 * 0.1 * 0.9);
    for (const int count : counts) {
        EXPECT_LE(std::abs(count - 1000), 5.0 * sigma);
    }
}

TEST(SampleIndices, InvalidArguments) {
    EXPECT_THROW((void)sample_indices(5, 6, 0), ArgumentError);
    EXPECT_THROW((void)sample_indices(5, 0, 0), ArgumentError);
}

TEST(KMeans, DistinctPointsAreTheirOwnCentroids) {
    std::mt19937_64 rng(1);
    const Matrix pts = fixtures::random_matrix(3, 6, rng);
    const KMeansResult r = kmeans(DataMatrix{pts}, 6, 20, 7);
    EXPECT_NEAR(r.objective, 0.0, 1e-20);
    std::vector<bool> used(6, false);
    for (Index j = 0; j < 6; ++j) {
        for (Index i = 0; i < 6; ++i) {
            if (!used[static_cast<std::size_t>(i)] && r.dictionary.atoms().col(j) == pts.col(i)) {
                used[static_cast<std::size_t>(i)] = true;
                break;
            }
        }
    }
    EXPECT_EQ(std::count(used.begin(), used.end(), true), 6);
}

TEST(KMeans, TwoSeparatedClustersRecoverMeans) {
    std::mt19937_64 rng(2);
    Matrix pts = 0.5 * fixtures::random_matrix(2, 20, rng);
    pts.rightCols(10).row(0).array() += 100.0;
    const Vector mean_a = pts.leftCols(10).rowwise().mean();
    const Vector mean_b = pts.rightCols(10).rowwise().mean();
    for (Seed seed = 0; seed < 5; ++seed) {
        const Matrix c = kmeans(DataMatrix{pts}, 2, 50, seed).dictionary.atoms();
        const bool a_first = (c.col(0) - mean_a).norm() < (c.col(1) - mean_a).norm();
        EXPECT_LE((c.col(a_first ? 0 : 1) - mean_a).norm(), 1e-9);
        EXPECT_LE((c.col(a_first ? 1 : 0) - mean_b).norm(), 1e-9);
    }
}

TEST(KMeans, ObjectiveHistoryNonIncreasing) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const DataMatrix x{fixtures::random_matrix(5, 120, rng)};
        const KMeansResult r = kmeans(x, 8, 100, static_cast<Seed>(trial));
        ASSERT_FALSE(r.objective_history.empty());
        EXPECT_EQ(static_cast<int>(r.objective_history.size()), r.iterations);
        for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
            EXPECT_LE(r.objective_history[i], r.objective_history[i - 1] * (1 + 1e-12));
        }
        EXPECT_DOUBLE_EQ(r.objective, r.objective_history.back());
    }
}

TEST(KMeans, KeepsAllAtomsWithDuplicatePoints) {
    Matrix pts = Matrix::Zero(2, 8);
    pts(0, 7) = 1.0;
    const KMeansResult r = kmeans(DataMatrix{pts}, 4, 10, 0);
    EXPECT_EQ(r.dictionary.size(), 4);
    EXPECT_TRUE(r.dictionary.atoms().allFinite());
}

TEST(KMeans, DeterministicPerSeed) {
    std::mt19937_64 rng(4);
    const DataMatrix x{fixtures::random_matrix(4, 60, rng)};
    EXPECT_EQ(kmeans(x, 5, 30, 9).dictionary.atoms(), kmeans(x, 5, 30, 9).dictionary.atoms());
}

TEST(KMeans, InvalidArguments) {
    const DataMatrix x{Matrix::Identity(3, 3)};
    EXPECT_THROW((void)kmeans(x, 4, 10, 0), ArgumentError);
    EXPECT_THROW((void)kmeans(x, 2, 0, 0), ArgumentError);
}

Matrix line(std::initializer_list<double> values) {
    Matrix m(static_cast<Index>(values.size()), 1);
    Index i = 0;
    for (const double v : values) {
        m(i++, 0) = v;
    }
    return m;
}

TEST(KCenters, LineInstance) {
    EXPECT_EQ(kcenters_from(line({0, 1, 10}), 2, 0), (std::vector<Index>{0, 2}));
}

TEST(KCenters, AllRowsGiveZeroRadius) {
    std::mt19937_64 rng(5);
    const Matrix items = fixtures::random_matrix(7, 3, rng);
    auto picked = kcenters(items, 7, 11);
    EXPECT_DOUBLE_EQ(covering_radius(items, picked), 0.0);
    std::sort(picked.begin(), picked.end());
    std::vector<Index> all(7);
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(picked, all);
}

// Brute-force farthest-first on 1-D points.
std::vector<Index> kcenters_oracle(const std::vector<double>& pts, Index c, Index first) {
    std::vector<Index> chosen{first};
    while (static_cast<Index>(chosen.size()) < c) {
        Index best = -1;
        double best_d = -1.0;
        for (Index i = 0; i < static_cast<Index>(pts.size()); ++i) {
            if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) {
                continue;
            }
            double d = INFINITY;
            for (const Index s : chosen) {
                d = std::min(d, std::abs(pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(s)]));
            }
            if (d > best_d) {
                best_d = d;
                best = i;
            }
        }
        chosen.push_back(best);
    }
    return chosen;
}

TEST(KCenters, MatchesBruteForceOnIntegerLines) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> coord(0, 20);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> pts(9);
        for (double& p : pts) {
            p = coord(rng);
        }
        Matrix items(9, 1);
        for (Index i = 0; i < 9; ++i) {
            items(i, 0) = pts[static_cast<std::size_t>(i)];
        }
        const Index first = trial % 9;
        const Index c = 1 + trial % 9;
        EXPECT_EQ(kcenters_from(items, c, first), kcenters_oracle(pts, c, first));
    }
}

TEST(KCenters, DuplicateRowNeverSecondPick) {
    // rows 0 and 1 identical; try every first pick and every placement of the pair
    const std::vector<std::vector<double>> instances{{0, 0, 3, 5}, {2, 0, 2, 7}, {1, 4, 9, 4}};
    for (const auto& inst : instances) {
        Matrix items(4, 1);
        for (Index i = 0; i < 4; ++i) {
            items(i, 0) = inst[static_cast<std::size_t>(i)];
        }
        for (Index first = 0; first < 4; ++first) {
            const auto picked = kcenters_from(items, 2, first);
            EXPECT_NE(items(picked[1], 0), items(first, 0));
        }
    }
    const Matrix same = Matrix::Ones(4, 2);
    const auto picked = kcenters_from(same, 2, 1);
    EXPECT_EQ(picked, (std::vector<Index>{1, 0}));
}

TEST(KCenters, CoveringRadiusNonIncreasing) {
    std::mt19937_64 rng(7);
    const Matrix items = fixtures::random_matrix(40, 5, rng);
    double previous = INFINITY;
    for (Index c = 1; c <= 40; ++c) {
        const double r = covering_radius(items, kcenters(items, c, 3));
        EXPECT_LE(r, previous);
        previous = r;
    }
}

TEST(KCenters, PrefixProperty) {
    std::mt19937_64 rng(8);
    const Matrix items = fixtures::random_matrix(30, 4, rng);
    const auto big = kcenters(items, 20, 5);
    const auto small = kcenters(items, 8, 5);
    EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
}

TEST(KCenters, TooManyCenters) {
    EXPECT_THROW((void)kcenters(Matrix::Ones(3, 2), 4, 0), ArgumentError);
    EXPECT_THROW((void)kcenters_from(Matrix::Ones(3, 2), 2, 3), ArgumentError);
}

}  // namespace
