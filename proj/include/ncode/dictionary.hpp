#pragma once

#include "ncode/coding.hpp"
#include "ncode/data.hpp"
#include "ncode/types.hpp"

#include <span>
#include <vector>

namespace ncode {

/// c distinct indices drawn uniformly from [0, n), sorted ascending.
[[nodiscard]] std::vector<Index> sample_indices(Index n, Index c, Seed seed);

struct KMeansResult {
    Dictionary dictionary;  ///< raw centroids, source = kmeans
    std::vector<Index> assignment;
    double objective = 0.0;  ///< sum of squared distances for the final assignment
    int iterations = 0;      ///< assignment steps performed
    /// Objective after each assignment step; non-increasing.
    std::vector<double> objective_history;
};

/// Lloyd's algorithm from a k-means++ start. Stops after max_iters
/// assignment steps or when the assignment no longer changes. An empty
/// cluster is moved onto the point farthest from its assigned centroid.
/// Distance ties go to the lowest centroid index.
[[nodiscard]] KMeansResult kmeans(const DataMatrix& x, Index c, int max_iters, Seed seed);

/// Greedy farthest-first K-centers over the rows of `items`. The first
/// center is drawn uniformly from the seed; each next one is the row
/// farthest from its nearest chosen center (ties: lowest index). Returns
/// row indices in selection order.
[[nodiscard]] std::vector<Index> kcenters(const Matrix& items, Index c, Seed seed);

/// Same traversal with an explicit first center.
[[nodiscard]] std::vector<Index> kcenters_from(const Matrix& items, Index c, Index first);

/// max over rows of the distance to the nearest center.
[[nodiscard]] double covering_radius(const Matrix& items, std::span<const Index> centers);

}  // namespace ncode
