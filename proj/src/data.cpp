#include "ncode/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

namespace ncode {

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.cols() < 1) {
        throw ArgumentError("DataMatrix needs at least one row and one column");
    }
    if (!values_.allFinite()) {
        throw ArgumentError("DataMatrix entries must be finite");
    }
}

DataMatrix DataMatrix::select(std::span<const Index> indices) const {
    Matrix out(dim(), static_cast<Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] < 0 || indices[j] >= size()) {
            throw ArgumentError("column index out of range");
        }
        out.col(static_cast<Index>(j)) = values_.col(indices[j]);
    }
    return DataMatrix{std::move(out)};
}

LabeledDataset LabeledDataset::select(std::span<const Index> indices) const {
    LabeledDataset out{data.select(indices), {}, num_classes, original_labels};
    if (has_labels()) {
        out.labels.reserve(indices.size());
        for (const Index i : indices) {
            out.labels.push_back(labels[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

Image::Image(int h, int w, int c) : height(h), width(w), channels(c) {
    if (h < 1 || w < 1 || c < 1) {
        throw ArgumentError("image dimensions must be positive");
    }
    pixels.assign(static_cast<std::size_t>(h) * w * c, 0.0);
}

PatchGrid extract_patches(const Image& image, int patch, int stride) {
    return extract_patches(std::span<const Image>(&image, 1), patch, stride);
}

PatchGrid extract_patches(std::span<const Image> images, int patch, int stride) {
    if (images.empty()) {
        throw ArgumentError("extract_patches: no images");
    }
    const Image& first = images.front();
    if (stride < 1) {
        throw ArgumentError("extract_patches: stride must be >= 1");
    }
    if (patch < 1 || patch > std::min(first.height, first.width)) {
        throw ArgumentError("extract_patches: patch size " + std::to_string(patch) + " does not fit a " +
                            std::to_string(first.height) + "x" + std::to_string(first.width) + " image");
    }
    const int grid_rows = (first.height - patch) / stride + 1;
    const int grid_cols = (first.width - patch) / stride + 1;
    const Index dim = static_cast<Index>(patch) * patch * first.channels;
    const Index per_image = static_cast<Index>(grid_rows) * grid_cols;

    Matrix out(dim, per_image * static_cast<Index>(images.size()));
    Index column = 0;
    for (const Image& image : images) {
        if (image.height != first.height || image.width != first.width || image.channels != first.channels) {
            throw ArgumentError("extract_patches: images differ in size");
        }
        for (int gr = 0; gr < grid_rows; ++gr) {
            for (int gc = 0; gc < grid_cols; ++gc) {
                Index k = 0;
                for (int r = 0; r < patch; ++r) {
                    for (int c = 0; c < patch; ++c) {
                        for (int ch = 0; ch < image.channels; ++ch) {
                            out(k++, column) = image.at(gr * stride + r, gc * stride + c, ch);
                        }
                    }
                }
                ++column;
            }
        }
    }
    return PatchGrid{DataMatrix{std::move(out)}, grid_rows, grid_cols, static_cast<int>(images.size())};
}

NormalizeResult normalize_columns(const DataMatrix& x, NormalizeMode mode) {
    Matrix values = x.values();
    if (mode == NormalizeMode::mean_center || mode == NormalizeMode::both) {
        for (Index j = 0; j < values.cols(); ++j) {
            values.col(j).array() -= values.col(j).mean();
        }
    }
    Index zero_columns = 0;
    if (mode == NormalizeMode::unit_l2 || mode == NormalizeMode::both) {
        for (Index j = 0; j < values.cols(); ++j) {
            const double norm = values.col(j).norm();
            if (norm == 0.0) {
                ++zero_columns;
                continue;
            }
            values.col(j) /= norm;
        }
    }
    return NormalizeResult{DataMatrix{std::move(values)}, zero_columns};
}

Seed derive_seed(Seed base, std::uint64_t stream) noexcept {
    // splitmix64 finaliser over the combined state
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

Matrix standard_normal(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix out(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            out(i, j) = normal(rng);
        }
    }
    return out;
}

struct Manifold {
    Matrix values;
    Matrix latent;
};

Manifold make_manifold(Index d, Index k, Index n, double noise_sigma, std::mt19937_64& rng) {
    if (d < 1 || n < 1 || k < 1 || k > std::min(d, n)) {
        throw ArgumentError("synth_manifold: need 1 <= k <= min(d, N)");
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw ArgumentError("synth_manifold: noise sigma must be a finite value >= 0");
    }
    const Matrix gaussian = standard_normal(d, k, rng);
    const Matrix basis = Eigen::HouseholderQR<Matrix>(gaussian).householderQ() * Matrix::Identity(d, k);
    Matrix latent = standard_normal(k, n, rng);
    Matrix values = basis * latent;
    if (noise_sigma > 0.0) {
        values += noise_sigma * standard_normal(d, n, rng);
    }
    return {std::move(values), std::move(latent)};
}

}  // namespace

DataMatrix synth_manifold(Index d, Index k, Index n, double noise_sigma, Seed seed) {
    std::mt19937_64 rng(seed);
    return DataMatrix{make_manifold(d, k, n, noise_sigma, rng).values};
}

LabeledDataset synth_labeled_manifold(Index d, Index k, Index n, double noise_sigma, int classes, Seed seed) {
    if (classes < 2) {
        throw ArgumentError("synth_labeled_manifold: need at least two classes");
    }
    std::mt19937_64 rng(seed);
    Manifold m = make_manifold(d, k, n, noise_sigma, rng);
    const Matrix prototypes = standard_normal(k, classes, rng);

    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        int best = 0;
        double best_dist = (m.latent.col(i) - prototypes.col(0)).squaredNorm();
        for (int c = 1; c < classes; ++c) {
            const double dist = (m.latent.col(i) - prototypes.col(c)).squaredNorm();
            if (dist < best_dist) {
                best_dist = dist;
                best = c;
            }
        }
        labels[static_cast<std::size_t>(i)] = best;
    }
    std::vector<long long> original(static_cast<std::size_t>(classes));
    for (int c = 0; c < classes; ++c) {
        original[static_cast<std::size_t>(c)] = c;
    }
    return LabeledDataset{DataMatrix{std::move(m.values)}, std::move(labels), classes, std::move(original)};
}

ImageSet two_texture_images(int count, int size, double noise_sigma, Seed seed) {
    if (count < 2 || size < 1) {
        throw ArgumentError("two_texture_images: need count >= 2 and size >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    constexpr double pi = std::numbers::pi;

    ImageSet set;
    set.images.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int label = i % 2;
        const double centre = label == 0 ? 0.0 : pi / 4.0;
        const double angle = centre + (unit(rng) - 0.5) * (pi / 6.0);
        const double frequency = 0.15 + 0.2 * unit(rng);
        const double phase = 2.0 * pi * unit(rng);
        const double contrast = 0.5 + unit(rng);
        const double cos_a = std::cos(angle);
        const double sin_a = std::sin(angle);

        Image image(size, size);
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                const double along = c * sin_a + r * cos_a;
                image.at(r, c) = contrast * std::sin(2.0 * pi * frequency * along + phase) + noise_sigma * normal(rng);
            }
        }
        set.images.push_back(std::move(image));
        set.labels.push_back(label);
    }
    return set;
}

std::pair<std::vector<Index>, std::vector<Index>> train_test_split(Index n, double train_fraction, Seed seed) {
    if (n < 2 || !(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ArgumentError("train_test_split: need N >= 2 and a train fraction in (0, 1)");
    }
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        order[static_cast<std::size_t>(i)] = i;
    }
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    auto n_train = static_cast<Index>(std::llround(train_fraction * static_cast<double>(n)));
    n_train = std::clamp<Index>(n_train, 1, n - 1);
    std::vector<Index> train(order.begin(), order.begin() + n_train);
    std::vector<Index> test(order.begin() + n_train, order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void format_error(const std::filesystem::path& path, std::size_t line, const std::string& what) {
    throw FormatError(path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

LabeledDataset load_csv(const std::filesystem::path& path, bool has_labels, bool skip_header) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    std::vector<std::vector<double>> rows;
    std::vector<long long> raw_labels;
    std::size_t width = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_header && line_no == 1) {
            continue;
        }
        if (trim(line).empty()) {
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view rest{line};
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(trim(rest.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (width == 0) {
            width = fields.size();
            if (has_labels && width < 2) {
                format_error(path, line_no, "labelled rows need at least one feature and a label");
            }
        } else if (fields.size() != width) {
            format_error(path, line_no,
                         "ragged row: expected " + std::to_string(width) + " fields, got " + std::to_string(fields.size()));
        }
        const std::size_t n_features = has_labels ? width - 1 : width;
        std::vector<double> row(n_features);
        for (std::size_t f = 0; f < n_features; ++f) {
            const std::string_view field = fields[f];
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), row[f]);
            if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty() || !std::isfinite(row[f])) {
                format_error(path, line_no, "non-numeric field '" + std::string(field) + "'");
            }
        }
        if (has_labels) {
            const std::string_view field = fields.back();
            long long label = 0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), label);
            if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
                format_error(path, line_no, "label '" + std::string(field) + "' is not an integer");
            }
            raw_labels.push_back(label);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        format_error(path, line_no, "empty file");
    }

    const Index d = static_cast<Index>(rows.front().size());
    Matrix values(d, static_cast<Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        for (Index i = 0; i < d; ++i) {
            values(i, static_cast<Index>(j)) = rows[j][static_cast<std::size_t>(i)];
        }
    }
    LabeledDataset out{DataMatrix{std::move(values)}, {}, 0, {}};
    if (has_labels) {
        std::map<long long, int> remap;
        for (const long long label : raw_labels) {
            remap.emplace(label, 0);
        }
        int next = 0;
        for (auto& [original, id] : remap) {
            id = next++;
            out.original_labels.push_back(original);
        }
        out.labels.reserve(raw_labels.size());
        for (const long long label : raw_labels) {
            out.labels.push_back(remap.at(label));
        }
        out.num_classes = next;
    }
    return out;
}

void save_csv(const std::filesystem::path& path, const LabeledDataset& dataset) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot write " + path.string());
    }
    const Matrix& x = dataset.data.values();
    char buffer[64];
    for (Index j = 0; j < x.cols(); ++j) {
        for (Index i = 0; i < x.rows(); ++i) {
            std::snprintf(buffer, sizeof buffer, "%.17g", x(i, j));
            if (i > 0) {
                out << ',';
            }
            out << buffer;
        }
        if (dataset.has_labels()) {
            const int id = dataset.labels[static_cast<std::size_t>(j)];
            const long long label = dataset.original_labels.empty()
                                        ? id
                                        : dataset.original_labels[static_cast<std::size_t>(id)];
            out << ',' << label;
        }
        out << '\n';
    }
    if (!out) {
        throw FormatError("write failed for " + path.string());
    }
}

LabeledDataset load_cifar10_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.empty()) {
        throw FormatError(path.string() + ": empty CIFAR-10 file");
    }
    if (bytes.size() % kCifarRecordBytes != 0) {
        throw FormatError(path.string() + ": truncated record " + std::to_string(bytes.size() / kCifarRecordBytes) +
                          " (file length " + std::to_string(bytes.size()) + " is not a multiple of 3073)");
    }
    const std::size_t records = bytes.size() / kCifarRecordBytes;
    constexpr Index pixels = kCifarRecordBytes - 1;
    Matrix values(pixels, static_cast<Index>(records));
    std::vector<int> labels(records);
    for (std::size_t r = 0; r < records; ++r) {
        const unsigned char* record = bytes.data() + r * kCifarRecordBytes;
        if (record[0] > 9) {
            throw FormatError(path.string() + ": record " + std::to_string(r) + " has label " +
                              std::to_string(record[0]) + " outside [0, 9]");
        }
        labels[r] = record[0];
        for (Index p = 0; p < pixels; ++p) {
            values(p, static_cast<Index>(r)) = record[1 + p] / 255.0;
        }
    }
    std::vector<long long> original(10);
    for (int c = 0; c < 10; ++c) {
        original[static_cast<std::size_t>(c)] = c;
    }
    return LabeledDataset{DataMatrix{std::move(values)}, std::move(labels), 10, std::move(original)};
}

}  // namespace ncode
