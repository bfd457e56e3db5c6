#include "ncode/dictionary.hpp"

#include "ncode/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace ncode {

std::vector<Index> sample_indices(Index n, Index c, Seed seed) {
    if (c < 1 || c > n) {
        throw ArgumentError("sample_indices: need 1 <= c <= N (c=" + std::to_string(c) + ", N=" + std::to_string(n) +
                            ")");
    }
    std::vector<Index> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates: the first c slots end up a uniform c-subset.
    for (Index i = 0; i < c; ++i) {
        std::uniform_int_distribution<Index> pick(i, n - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
    }
    pool.resize(static_cast<std::size_t>(c));
    std::sort(pool.begin(), pool.end());
    return pool;
}

namespace {

struct Assignment {
    std::vector<Index> owner;
    std::vector<double> distance;
    double objective = 0.0;
};

Assignment assign(const Matrix& x, const Matrix& centroids) {
    const auto& k = simd::active();
    const auto dim = static_cast<std::size_t>(x.rows());
    Assignment out;
    out.owner.resize(static_cast<std::size_t>(x.cols()));
    out.distance.resize(static_cast<std::size_t>(x.cols()));
    for (Index i = 0; i < x.cols(); ++i) {
        Index best = 0;
        double best_dist = k.squared_distance(x.col(i).data(), centroids.col(0).data(), dim);
        for (Index j = 1; j < centroids.cols(); ++j) {
            const double dist = k.squared_distance(x.col(i).data(), centroids.col(j).data(), dim);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        out.owner[static_cast<std::size_t>(i)] = best;
        out.distance[static_cast<std::size_t>(i)] = best_dist;
        out.objective += best_dist;
    }
    return out;
}

Matrix kmeanspp_init(const Matrix& x, Index c, std::mt19937_64& rng) {
    const auto& k = simd::active();
    const auto dim = static_cast<std::size_t>(x.rows());
    const Index n = x.cols();
    Matrix centroids(x.rows(), c);
    std::vector<bool> chosen(static_cast<std::size_t>(n), false);

    std::uniform_int_distribution<Index> first(0, n - 1);
    Index pick = first(rng);
    centroids.col(0) = x.col(pick);
    chosen[static_cast<std::size_t>(pick)] = true;

    std::vector<double> nearest(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        nearest[static_cast<std::size_t>(i)] = k.squared_distance(x.col(i).data(), centroids.col(0).data(), dim);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (Index j = 1; j < c; ++j) {
        const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
        pick = -1;
        if (total > 0.0) {
            const double target = unit(rng) * total;
            double running = 0.0;
            for (Index i = 0; i < n; ++i) {
                running += nearest[static_cast<std::size_t>(i)];
                if (running > target && nearest[static_cast<std::size_t>(i)] > 0.0) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) {  // rounding at the tail: last point with positive weight
                for (Index i = n - 1; i >= 0; --i) {
                    if (nearest[static_cast<std::size_t>(i)] > 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
        }
        if (pick < 0) {  // fewer distinct points than clusters
            pick = static_cast<Index>(std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
        }
        chosen[static_cast<std::size_t>(pick)] = true;
        centroids.col(j) = x.col(pick);
        for (Index i = 0; i < n; ++i) {
            auto& d = nearest[static_cast<std::size_t>(i)];
            d = std::min(d, k.squared_distance(x.col(i).data(), centroids.col(j).data(), dim));
        }
    }
    return centroids;
}

}  // namespace

KMeansResult kmeans(const DataMatrix& data, Index c, int max_iters, Seed seed) {
    const Matrix& x = data.values();
    const Index n = x.cols();
    if (c < 1 || c > n) {
        throw ArgumentError("kmeans: need 1 <= c <= N (c=" + std::to_string(c) + ", N=" + std::to_string(n) + ")");
    }
    if (max_iters < 1) {
        throw ArgumentError("kmeans: max_iters must be >= 1");
    }
    std::mt19937_64 rng(seed);
    Matrix centroids = kmeanspp_init(x, c, rng);

    std::vector<double> history;
    Assignment current;
    int iterations = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
        Assignment next = assign(x, centroids);
        ++iterations;
        history.push_back(next.objective);
        const bool unchanged = iter > 0 && next.owner == current.owner;
        current = std::move(next);
        if (unchanged || iter + 1 == max_iters) {
            break;
        }

        Matrix sums = Matrix::Zero(x.rows(), c);
        std::vector<Index> counts(static_cast<std::size_t>(c), 0);
        for (Index i = 0; i < n; ++i) {
            const Index owner = current.owner[static_cast<std::size_t>(i)];
            sums.col(owner) += x.col(i);
            ++counts[static_cast<std::size_t>(owner)];
        }
        std::vector<bool> taken(static_cast<std::size_t>(n), false);
        for (Index j = 0; j < c; ++j) {
            if (counts[static_cast<std::size_t>(j)] > 0) {
                centroids.col(j) = sums.col(j) / static_cast<double>(counts[static_cast<std::size_t>(j)]);
                continue;
            }
            Index farthest = -1;
            double farthest_dist = -1.0;
            for (Index i = 0; i < n; ++i) {
                if (!taken[static_cast<std::size_t>(i)] && current.distance[static_cast<std::size_t>(i)] > farthest_dist) {
                    farthest_dist = current.distance[static_cast<std::size_t>(i)];
                    farthest = i;
                }
            }
            taken[static_cast<std::size_t>(farthest)] = true;
            centroids.col(j) = x.col(farthest);
        }
    }

    const double objective = current.objective;
    return KMeansResult{Dictionary{std::move(centroids), DictionarySource::kmeans}, std::move(current.owner), objective,
                        iterations, std::move(history)};
}

std::vector<Index> kcenters_from(const Matrix& items, Index c, Index first) {
    const Index n = items.rows();
    if (c < 1 || c > n) {
        throw ArgumentError("kcenters: need 1 <= c <= rows (c=" + std::to_string(c) + ", rows=" + std::to_string(n) +
                            ")");
    }
    if (first < 0 || first >= n) {
        throw ArgumentError("kcenters: first center out of range");
    }
    const Matrix columns = items.transpose();
    const auto dim = static_cast<std::size_t>(items.cols());
    const auto& k = simd::active();

    std::vector<Index> centers{first};
    std::vector<bool> chosen(static_cast<std::size_t>(n), false);
    chosen[static_cast<std::size_t>(first)] = true;
    std::vector<double> nearest(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        nearest[static_cast<std::size_t>(i)] = k.squared_distance(columns.col(i).data(), columns.col(first).data(), dim);
    }
    while (static_cast<Index>(centers.size()) < c) {
        Index best = -1;
        double best_dist = -1.0;
        for (Index i = 0; i < n; ++i) {
            if (!chosen[static_cast<std::size_t>(i)] && nearest[static_cast<std::size_t>(i)] > best_dist) {
                best_dist = nearest[static_cast<std::size_t>(i)];
                best = i;
            }
        }
        centers.push_back(best);
        chosen[static_cast<std::size_t>(best)] = true;
        for (Index i = 0; i < n; ++i) {
            auto& d = nearest[static_cast<std::size_t>(i)];
            d = std::min(d, k.squared_distance(columns.col(i).data(), columns.col(best).data(), dim));
        }
    }
    return centers;
}

std::vector<Index> kcenters(const Matrix& items, Index c, Seed seed) {
    if (items.rows() < 1) {
        throw ArgumentError("kcenters: no items");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> first(0, items.rows() - 1);
    return kcenters_from(items, c, first(rng));
}

double covering_radius(const Matrix& items, std::span<const Index> centers) {
    if (centers.empty()) {
        throw ArgumentError("covering_radius: no centers");
    }
    double radius = 0.0;
    for (Index i = 0; i < items.rows(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Index s : centers) {
            nearest = std::min(nearest, (items.row(i) - items.row(s)).squaredNorm());
        }
        radius = std::max(radius, nearest);
    }
    return std::sqrt(radius);
}

}  // namespace ncode
