#pragma once

#include "ncode/types.hpp"

#include <filesystem>
#include <span>
#include <vector>

namespace ncode {

/// d x N matrix, one sample per column. Entries are always finite.
class DataMatrix {
  public:
    explicit DataMatrix(Matrix values);

    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] Index dim() const noexcept { return values_.rows(); }
    [[nodiscard]] Index size() const noexcept { return values_.cols(); }
    [[nodiscard]] auto sample(Index i) const { return values_.col(i); }

    /// Columns `indices` in the given order.
    [[nodiscard]] DataMatrix select(std::span<const Index> indices) const;

  private:
    Matrix values_;
};

/// Data with contiguous class ids in [0, num_classes). Unlabeled data has
/// empty `labels` and num_classes == 0.
struct LabeledDataset {
    DataMatrix data;
    std::vector<int> labels;
    int num_classes = 0;
    /// original_labels[id] is the label value found in the source file.
    std::vector<long long> original_labels;

    [[nodiscard]] bool has_labels() const noexcept { return !labels.empty(); }
    [[nodiscard]] LabeledDataset select(std::span<const Index> indices) const;
};

/// Single image, pixels stored row-major with channels fastest.
struct Image {
    int height = 0;
    int width = 0;
    int channels = 1;
    std::vector<double> pixels;

    Image(int h, int w, int c = 1);
    [[nodiscard]] double& at(int row, int col, int channel = 0) {
        return pixels[static_cast<std::size_t>((row * width + col) * channels + channel)];
    }
    [[nodiscard]] double at(int row, int col, int channel = 0) const {
        return pixels[static_cast<std::size_t>((row * width + col) * channels + channel)];
    }
};

/// Flattened patches of one or more equally-sized images. Patches are
/// row-major within an image, images consecutive.
struct PatchGrid {
    DataMatrix patches;
    int grid_rows = 0;
    int grid_cols = 0;
    int images = 0;

    [[nodiscard]] int patches_per_image() const noexcept { return grid_rows * grid_cols; }
};

[[nodiscard]] PatchGrid extract_patches(const Image& image, int patch, int stride);
[[nodiscard]] PatchGrid extract_patches(std::span<const Image> images, int patch, int stride);

enum class NormalizeMode { mean_center, unit_l2, both };

struct NormalizeResult {
    DataMatrix data;
    /// Columns that were all-zero when unit scaling was applied; left as zero.
    Index zero_columns = 0;
};

[[nodiscard]] NormalizeResult normalize_columns(const DataMatrix& x, NormalizeMode mode);

/// X = B G + sigma Z with B (d x k) orthonormal, G and Z standard normal.
[[nodiscard]] DataMatrix synth_manifold(Index d, Index k, Index n, double noise_sigma, Seed seed);

/// synth_manifold data labelled by the nearest of `classes` random
/// prototypes in the k-dimensional latent space.
[[nodiscard]] LabeledDataset synth_labeled_manifold(Index d, Index k, Index n, double noise_sigma, int classes,
                                                    Seed seed);

struct ImageSet {
    std::vector<Image> images;
    std::vector<int> labels;
};

/// Two oriented-grating textures (class 0 near-horizontal stripes, class 1
/// near-diagonal) with random frequency, phase, contrast and additive noise.
[[nodiscard]] ImageSet two_texture_images(int count, int size, double noise_sigma, Seed seed);

/// Seeded 80/20-style split: returns (train indices, test indices), each sorted.
[[nodiscard]] std::pair<std::vector<Index>, std::vector<Index>> train_test_split(Index n, double train_fraction,
                                                                                 Seed seed);

/// Decorrelated sub-seed for a numbered stream.
[[nodiscard]] Seed derive_seed(Seed base, std::uint64_t stream) noexcept;

[[nodiscard]] LabeledDataset load_csv(const std::filesystem::path& path, bool has_labels, bool skip_header = false);
void save_csv(const std::filesystem::path& path, const LabeledDataset& dataset);

inline constexpr std::size_t kCifarRecordBytes = 3073;
inline constexpr int kCifarSide = 32;

[[nodiscard]] LabeledDataset load_cifar10_binary(const std::filesystem::path& path);

}  // namespace ncode
