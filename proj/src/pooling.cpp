#include "ncode/pooling_pdl.hpp"

#include "ncode/dictionary.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ncode {

namespace {

// Region index of grid row/col `pos` when `extent` cells are cut into `parts`.
int region_of(int pos, int extent, int parts) {
    const int size = extent / parts;
    return std::min(pos / size, parts - 1);
}

}  // namespace

PooledFeatures pool(const Matrix& codes, const PoolingLayout& layout) {
    if (layout.grid_rows < 1 || layout.grid_cols < 1 || layout.region_rows < 1 || layout.region_cols < 1) {
        throw ArgumentError("pool: grid and region counts must be positive");
    }
    if (layout.region_rows > layout.grid_rows || layout.region_cols > layout.grid_cols) {
        throw ArgumentError("pool: " + std::to_string(layout.region_rows) + "x" + std::to_string(layout.region_cols) +
                            " regions do not fit a " + std::to_string(layout.grid_rows) + "x" +
                            std::to_string(layout.grid_cols) + " patch grid");
    }
    const Index per_image = static_cast<Index>(layout.grid_rows) * layout.grid_cols;
    if (codes.rows() % per_image != 0) {
        throw ArgumentError("pool: patch count is not a multiple of the grid size");
    }
    const Index images = codes.rows() / per_image;
    const Index atoms = codes.cols();
    const int regions = layout.regions();

    const double init = layout.op == PoolOp::max ? -std::numeric_limits<double>::infinity() : 0.0;
    Matrix out = Matrix::Constant(images, regions * atoms, init);
    std::vector<int> counts(static_cast<std::size_t>(regions), 0);
    for (int r = 0; r < layout.grid_rows; ++r) {
        for (int c = 0; c < layout.grid_cols; ++c) {
            const int region = region_of(r, layout.grid_rows, layout.region_rows) * layout.region_cols +
                               region_of(c, layout.grid_cols, layout.region_cols);
            ++counts[static_cast<std::size_t>(region)];
        }
    }

    for (Index img = 0; img < images; ++img) {
        for (int r = 0; r < layout.grid_rows; ++r) {
            for (int c = 0; c < layout.grid_cols; ++c) {
                const Index patch = img * per_image + static_cast<Index>(r) * layout.grid_cols + c;
                const int region = region_of(r, layout.grid_rows, layout.region_rows) * layout.region_cols +
                                   region_of(c, layout.grid_cols, layout.region_cols);
                auto dest = out.row(img).segment(static_cast<Index>(region) * atoms, atoms);
                if (layout.op == PoolOp::max) {
                    dest = dest.cwiseMax(codes.row(patch));
                } else {
                    dest += codes.row(patch);
                }
            }
        }
    }
    if (layout.op == PoolOp::average) {
        for (int region = 0; region < regions; ++region) {
            out.middleCols(static_cast<Index>(region) * atoms, atoms) /=
                static_cast<double>(counts[static_cast<std::size_t>(region)]);
        }
    }
    return PooledFeatures{std::move(out), regions, layout.op};
}

PooledFeatures pool(const CodeMatrix& codes, const PoolingLayout& layout) { return pool(codes.values(), layout); }

PdlResult prune_dictionary(const PatchGrid& patches, const Dictionary& overshoot, const PdlOptions& options) {
    if (options.final_c < 1 || options.final_c > overshoot.size()) {
        throw ArgumentError("pdl: final_c must lie in [1, overshoot dictionary size]");
    }
    const PoolingLayout layout{patches.grid_rows, patches.grid_cols, options.region_rows, options.region_cols,
                               options.op};
    const PooledFeatures pooled = pool(encode(patches.patches, overshoot, options.alpha), layout);

    // Row j: atom j's pooled response at every (image, region).
    const Index atoms = overshoot.size();
    const Index images = pooled.values.rows();
    Matrix responses(atoms, images * pooled.regions);
    for (Index j = 0; j < atoms; ++j) {
        for (int region = 0; region < pooled.regions; ++region) {
            responses.row(j).segment(static_cast<Index>(region) * images, images) =
                pooled.values.col(static_cast<Index>(region) * atoms + j).transpose();
        }
    }

    std::vector<Index> selected = kcenters(responses, options.final_c, options.seed);
    Matrix atoms_out(overshoot.dim(), options.final_c);
    for (Index j = 0; j < options.final_c; ++j) {
        atoms_out.col(j) = overshoot.atoms().col(selected[static_cast<std::size_t>(j)]);
    }
    return PdlResult{Dictionary{std::move(atoms_out), DictionarySource::kcenters, std::move(selected)}, overshoot,
                     std::move(responses)};
}

PdlResult pdl(const PatchGrid& patches, const PdlOptions& options) {
    if (options.overshoot < 1) {
        throw ArgumentError("pdl: overshoot must be >= 1");
    }
    if (options.final_c < 1) {
        throw ArgumentError("pdl: final_c must be >= 1");
    }
    const Index big = options.final_c * options.overshoot;
    if (big > patches.patches.size()) {
        throw ArgumentError("pdl: " + std::to_string(big) + " atoms requested from only " +
                            std::to_string(patches.patches.size()) + " training patches");
    }
    const Dictionary overshoot =
        normalize_atoms(kmeans(patches.patches, big, options.kmeans_iters, options.seed).dictionary);
    return prune_dictionary(patches, overshoot, options);
}

}  // namespace ncode
