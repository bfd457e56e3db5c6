#pragma once

#include "ncode/coding.hpp"
#include "ncode/data.hpp"
#include "ncode/types.hpp"

#include <vector>

namespace ncode {

enum class PoolOp { average, max };

/// Patch grid of each image and the pooling regions laid over it. When the
/// grid does not split evenly, the last region row/column takes the remainder.
struct PoolingLayout {
    int grid_rows = 0;
    int grid_cols = 0;
    int region_rows = 2;
    int region_cols = 2;
    PoolOp op = PoolOp::average;

    [[nodiscard]] int regions() const noexcept { return region_rows * region_cols; }
};

/// One row per image; columns are (region, atom) with regions row-major and
/// the atom index fastest.
struct PooledFeatures {
    Matrix values;
    int regions = 0;
    PoolOp op = PoolOp::average;
};

/// Pools patch codes (N_patches x c, patches ordered as in PatchGrid).
[[nodiscard]] PooledFeatures pool(const Matrix& codes, const PoolingLayout& layout);
[[nodiscard]] PooledFeatures pool(const CodeMatrix& codes, const PoolingLayout& layout);

struct PdlOptions {
    Index final_c = 16;
    int overshoot = 2;
    double alpha = kDefaultAlpha;
    int region_rows = 2;
    int region_cols = 2;
    PoolOp op = PoolOp::average;
    int kmeans_iters = 50;
    Seed seed = 0;
};

struct PdlResult {
    Dictionary dictionary;         ///< final_c atoms taken from `overshoot_dictionary`, source = kcenters
    Dictionary overshoot_dictionary;
    /// Atom representation used for pruning: one row per overshoot atom,
    /// its pooled responses over (image, region).
    Matrix atom_responses;
};

/// Pooling-aware dictionary learning: k-means at overshoot * final_c atoms
/// (unit-normalised), encode and pool the training patches, then keep the
/// final_c atoms picked by K-centers over their pooled-response rows.
[[nodiscard]] PdlResult pdl(const PatchGrid& patches, const PdlOptions& options);

/// K-centers pruning step alone, given an overshoot dictionary.
[[nodiscard]] PdlResult prune_dictionary(const PatchGrid& patches, const Dictionary& overshoot, const PdlOptions& options);

}  // namespace ncode
