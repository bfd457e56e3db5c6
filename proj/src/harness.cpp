#include "ncode/harness.hpp"

#include "ncode/classifier.hpp"
#include "ncode/dictionary.hpp"
#include "ncode/nystrom.hpp"
#include "ncode/simd/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

namespace ncode {

Stat summarize(const std::vector<double>& values) {
    if (values.empty()) {
        return {};
    }
    double mean = 0.0;
    for (const double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (const double v : values) {
        var += (v - mean) * (v - mean);
    }
    const double std = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
    return {mean, std};
}

std::vector<Index> normalize_grid(const std::vector<Index>& grid) {
    std::vector<Index> out = grid;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() < 3) {
        throw ArgumentError("codebook grid needs at least three distinct sizes, got " + std::to_string(out.size()));
    }
    return out;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

namespace {

std::string now_iso8601() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

DataMatrix preprocess(const DataMatrix& x, Preprocess mode) {
    switch (mode) {
        case Preprocess::none:
            return x;
        case Preprocess::mean_center:
            return normalize_columns(x, NormalizeMode::mean_center).data;
        case Preprocess::unit_l2:
            return normalize_columns(x, NormalizeMode::unit_l2).data;
        case Preprocess::both:
            return normalize_columns(x, NormalizeMode::both).data;
    }
    return x;
}

std::optional<LabeledDataset> load_file_dataset(const ExperimentConfig& config) {
    switch (config.dataset) {
        case DatasetKind::synthetic:
            return std::nullopt;
        case DatasetKind::csv:
            return load_csv(config.data_path, true, config.csv_header);
        case DatasetKind::cifar10:
            return load_cifar10_binary(config.data_path);
    }
    return std::nullopt;
}

struct CellResult {
    double train_acc = 0.0;
    double test_acc = 0.0;
    std::optional<double> code_err;
    std::optional<double> kernel_err;
    std::optional<double> bound;
};

// All (c) cells for one seed; the split and full-code diagnostics are shared.
std::map<Index, CellResult> run_seed(const ExperimentConfig& config, const LabeledDataset& raw,
                                     const std::vector<Index>& grid, Seed seed, std::vector<std::string>& warnings) {
    if (!raw.has_labels() || raw.num_classes < 2) {
        throw ArgumentError("curve: dataset needs labels from at least two classes");
    }
    const LabeledDataset data{preprocess(raw.data, config.normalize), raw.labels, raw.num_classes,
                              raw.original_labels};
    const auto [train_idx, test_idx] = train_test_split(data.data.size(), config.train_fraction, derive_seed(seed, 1));
    const LabeledDataset train = data.select(train_idx);
    const LabeledDataset test = data.select(test_idx);
    const Index n_train = train.data.size();
    const double lambda = config.lambda ? *config.lambda : config.lambda_scale * static_cast<double>(n_train);

    const bool diagnostics = config.dictionary == DictionaryKind::sampled && n_train <= config.diagnostics_limit;
    Matrix full;
    Matrix kernel;
    SpectralReport spectral;
    if (diagnostics) {
        full = full_code(train.data, config.alpha).values();
        kernel = gram_kernel(full);
        spectral = spectral_report(full, config.energy);
    }

    std::map<Index, CellResult> cells;
    for (const Index c : grid) {
        if (c > n_train) {
            warnings.push_back("seed " + std::to_string(seed) + ": skipping c=" + std::to_string(c) +
                               " (only " + std::to_string(n_train) + " training samples)");
            continue;
        }
        const Seed dict_seed = derive_seed(seed, 100 + static_cast<std::uint64_t>(c));
        std::optional<Dictionary> dict;
        if (config.dictionary == DictionaryKind::sampled) {
            dict = Dictionary::from_samples(train.data, sample_indices(n_train, c, dict_seed));
        } else {
            dict = normalize_atoms(kmeans(train.data, c, config.kmeans_iters, dict_seed).dictionary);
        }
        const CodeMatrix train_codes = encode(train.data, *dict, config.alpha);
        const CodeMatrix test_codes = encode(test.data, *dict, config.alpha);
        const LinearModel model = train_ridge(train_codes, train.labels, data.num_classes, lambda);

        CellResult cell;
        cell.train_acc = accuracy(predict(model, train_codes), train.labels);
        cell.test_acc = accuracy(predict(model, test_codes), test.labels);
        if (diagnostics) {
            // Codes against sampled training columns are exactly the Nystrom E.
            const NystromFactors factors = factors_from_codes(train_codes, dict->indices(), config.pinv_tol);
            const ApproximationErrors errors = approximation_errors(full, kernel, factors);
            cell.code_err = errors.code_err;
            cell.kernel_err = errors.kernel_err;
            cell.bound = column_sampling_bound(spectral, c);
        }
        cells.emplace(c, cell);
    }
    return cells;
}

}  // namespace

ExperimentReport run_curve(const ExperimentConfig& config) {
    validate(config);
    ExperimentReport report;
    report.config = config;
    report.simd = std::string(simd::name(simd::active().isa));
    report.started_at = now_iso8601();
    const std::vector<Index> grid = normalize_grid(config.c_grid);

    const std::optional<LabeledDataset> file_data = load_file_dataset(config);
    std::vector<std::map<Index, CellResult>> per_seed;
    for (int s = 0; s < config.num_seeds; ++s) {
        const Seed seed = config.seed + static_cast<Seed>(s);
        const LabeledDataset data =
            file_data ? *file_data
                      : synth_labeled_manifold(config.synth_d, config.synth_k, config.synth_n, config.synth_noise,
                                               config.synth_classes, seed);
        per_seed.push_back(run_seed(config, data, grid, seed, report.warnings));
    }

    for (const Index c : grid) {
        std::vector<double> train_acc, test_acc, code_err, kernel_err, bound;
        int covered = 0;
        for (const auto& cells : per_seed) {
            const auto it = cells.find(c);
            if (it == cells.end()) {
                continue;
            }
            const CellResult& cell = it->second;
            train_acc.push_back(cell.train_acc);
            test_acc.push_back(cell.test_acc);
            if (cell.code_err) {
                code_err.push_back(*cell.code_err);
                kernel_err.push_back(*cell.kernel_err);
                bound.push_back(*cell.bound);
                covered += *cell.code_err <= *cell.bound ? 1 : 0;
            }
        }
        if (train_acc.empty()) {
            continue;
        }
        CurvePoint point;
        point.c = c;
        point.seeds_used = static_cast<int>(train_acc.size());
        point.train_acc = summarize(train_acc);
        point.test_acc = summarize(test_acc);
        if (!code_err.empty()) {
            point.code_err = summarize(code_err);
            point.kernel_err = summarize(kernel_err);
            point.bound_eq1 = summarize(bound);
            point.bound_coverage = static_cast<double>(covered) / static_cast<double>(code_err.size());
        }
        report.curve.push_back(point);
    }
    if (report.curve.size() < 2) {
        throw ArgumentError("curve: fewer than two codebook sizes fit the training set");
    }

    Index fit1 = report.curve[0].c;
    Index fit2 = report.curve[1].c;
    if (!config.fit_c.empty()) {
        fit1 = std::min(config.fit_c[0], config.fit_c[1]);
        fit2 = std::max(config.fit_c[0], config.fit_c[1]);
    }
    auto find_point = [&](Index c) -> const CurvePoint& {
        for (const CurvePoint& p : report.curve) {
            if (p.c == c) {
                return p;
            }
        }
        throw ArgumentError("fit_c value " + std::to_string(c) + " is not an evaluated grid point");
    };
    const CurvePoint& p1 = find_point(fit1);
    const CurvePoint& p2 = find_point(fit2);
    const auto cd = [](Index c) { return static_cast<double>(c); };
    report.train_model =
        fit_two_point({cd(p1.c), p1.train_acc.mean}, {cd(p2.c), p2.train_acc.mean}, ModelForm::accuracy);
    report.test_model = fit_two_point({cd(p1.c), p1.test_acc.mean}, {cd(p2.c), p2.test_acc.mean}, ModelForm::accuracy);
    if (p1.kernel_err && p2.kernel_err) {
        report.kernel_model =
            fit_two_point({cd(p1.c), p1.kernel_err->mean}, {cd(p2.c), p2.kernel_err->mean}, ModelForm::error);
    }
    for (const SaturationModel* m : {&report.train_model, &report.test_model}) {
        if (!m->saturates_from_below()) {
            report.warnings.push_back("accuracy model has negative slope; it does not saturate from below");
        }
    }

    for (CurvePoint& p : report.curve) {
        p.fit_point = p.c == fit1 || p.c == fit2;
        p.pred_train = predict(report.train_model, cd(p.c));
        p.pred_test = predict(report.test_model, cd(p.c));
        if (report.kernel_model) {
            p.pred_kernel_err = predict(*report.kernel_model, cd(p.c));
        }
    }
    report.finished_at = now_iso8601();
    return report;
}

namespace {

std::vector<Image> images_from_cifar(const LabeledDataset& data) {
    std::vector<Image> images;
    images.reserve(static_cast<std::size_t>(data.data.size()));
    constexpr int plane = kCifarSide * kCifarSide;
    for (Index j = 0; j < data.data.size(); ++j) {
        Image image(kCifarSide, kCifarSide, 3);
        for (int ch = 0; ch < 3; ++ch) {
            for (int r = 0; r < kCifarSide; ++r) {
                for (int c = 0; c < kCifarSide; ++c) {
                    image.at(r, c, ch) = data.data.values()(ch * plane + r * kCifarSide + c, j);
                }
            }
        }
        images.push_back(std::move(image));
    }
    return images;
}

}  // namespace

PdlReport run_pdl_compare(const ExperimentConfig& config) {
    validate(config);
    PdlReport report;
    report.config = config;
    report.simd = std::string(simd::name(simd::active().isa));
    report.started_at = now_iso8601();

    std::vector<int> overshoots = config.overshoot;
    std::sort(overshoots.begin(), overshoots.end());
    overshoots.erase(std::unique(overshoots.begin(), overshoots.end()), overshoots.end());
    if (overshoots.empty() || overshoots.front() != 1) {
        report.warnings.emplace_back("overshoot 1 added as the baseline row");
        overshoots.insert(overshoots.begin(), 1);
    }
    std::vector<Index> final_grid = config.final_c_grid;
    std::sort(final_grid.begin(), final_grid.end());
    final_grid.erase(std::unique(final_grid.begin(), final_grid.end()), final_grid.end());
    if (final_grid.empty()) {
        throw ArgumentError("pdl: final_c_grid is empty");
    }

    std::optional<ImageSet> file_images;
    if (config.dataset == DatasetKind::cifar10) {
        const LabeledDataset cifar = load_cifar10_binary(config.data_path);
        file_images = ImageSet{images_from_cifar(cifar), cifar.labels};
    } else if (config.dataset == DatasetKind::csv) {
        throw ArgumentError("pdl: CSV datasets carry no image layout; use synthetic or cifar10");
    }

    // results[(final_c, overshoot)] -> per-seed (train, test) accuracy
    std::map<std::pair<Index, int>, std::vector<std::pair<double, double>>> results;
    for (int s = 0; s < config.num_seeds; ++s) {
        const Seed seed = config.seed + static_cast<Seed>(s);
        const ImageSet set = file_images ? *file_images
                                         : two_texture_images(config.pdl_images, config.image_size,
                                                              config.texture_noise, seed);
        const int num_classes = *std::max_element(set.labels.begin(), set.labels.end()) + 1;
        const auto [train_idx, test_idx] =
            train_test_split(static_cast<Index>(set.images.size()), config.train_fraction, derive_seed(seed, 1));
        std::vector<Image> train_images, test_images;
        std::vector<int> train_labels, test_labels;
        for (const Index i : train_idx) {
            train_images.push_back(set.images[static_cast<std::size_t>(i)]);
            train_labels.push_back(set.labels[static_cast<std::size_t>(i)]);
        }
        for (const Index i : test_idx) {
            test_images.push_back(set.images[static_cast<std::size_t>(i)]);
            test_labels.push_back(set.labels[static_cast<std::size_t>(i)]);
        }
        PatchGrid train_patches = extract_patches(train_images, config.patch, config.stride);
        PatchGrid test_patches = extract_patches(test_images, config.patch, config.stride);
        train_patches.patches = preprocess(train_patches.patches, config.patch_normalize);
        test_patches.patches = preprocess(test_patches.patches, config.patch_normalize);
        const PoolingLayout layout{train_patches.grid_rows, train_patches.grid_cols, config.pool_rows,
                                   config.pool_cols, config.pool_op};
        const double lambda = config.lambda ? *config.lambda
                                            : config.lambda_scale * static_cast<double>(train_images.size());

        for (const Index final_c : final_grid) {
            for (const int overshoot : overshoots) {
                PdlOptions options;
                options.final_c = final_c;
                options.overshoot = overshoot;
                options.alpha = config.alpha;
                options.region_rows = config.pool_rows;
                options.region_cols = config.pool_cols;
                options.op = config.pool_op;
                options.kmeans_iters = config.kmeans_iters;
                options.seed = derive_seed(seed, 200 + static_cast<std::uint64_t>(final_c));
                if (final_c * overshoot > train_patches.patches.size()) {
                    report.warnings.push_back("seed " + std::to_string(seed) + ": skipping final_c=" +
                                              std::to_string(final_c) + " overshoot=" + std::to_string(overshoot) +
                                              " (too few training patches)");
                    continue;
                }
                const Dictionary dict = pdl(train_patches, options).dictionary;
                const Matrix train_features = pool(encode(train_patches.patches, dict, config.alpha), layout).values;
                const Matrix test_features = pool(encode(test_patches.patches, dict, config.alpha), layout).values;
                const LinearModel model = train_ridge(train_features, train_labels, num_classes, lambda);
                results[{final_c, overshoot}].emplace_back(accuracy(predict(model, train_features), train_labels),
                                                           accuracy(predict(model, test_features), test_labels));
            }
        }
    }

    for (const Index final_c : final_grid) {
        std::optional<double> baseline;
        for (const int overshoot : overshoots) {
            const auto it = results.find({final_c, overshoot});
            if (it == results.end()) {
                continue;
            }
            PdlRow row;
            row.final_c = final_c;
            row.overshoot = overshoot;
            std::vector<double> train;
            for (const auto& [tr, te] : it->second) {
                train.push_back(tr);
                row.test_acc_per_seed.push_back(te);
            }
            row.train_acc = summarize(train);
            row.test_acc = summarize(row.test_acc_per_seed);
            if (overshoot == 1) {
                baseline = row.test_acc.mean;
            }
            row.delta = baseline ? row.test_acc.mean - *baseline : 0.0;
            report.rows.push_back(std::move(row));
        }
    }
    report.finished_at = now_iso8601();
    return report;
}

namespace {

nlohmann::json optional_stat(const std::optional<Stat>& s) {
    return s ? nlohmann::json{{"mean", s->mean}, {"std", s->std}} : nlohmann::json(nullptr);
}

std::optional<Stat> read_optional_stat(const nlohmann::json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return Stat{j.at("mean").get<double>(), j.at("std").get<double>()};
}

template <typename T>
nlohmann::json optional_value(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> read_optional(const nlohmann::json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<T>();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw FormatError("write failed for " + path.string());
    }
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

}  // namespace

void to_json(nlohmann::json& j, const ExperimentReport& r) {
    nlohmann::json curve = nlohmann::json::array();
    for (const CurvePoint& p : r.curve) {
        curve.push_back({{"c", p.c},
                         {"train_acc", {{"mean", p.train_acc.mean}, {"std", p.train_acc.std}}},
                         {"test_acc", {{"mean", p.test_acc.mean}, {"std", p.test_acc.std}}},
                         {"code_err", optional_stat(p.code_err)},
                         {"kernel_err", optional_stat(p.kernel_err)},
                         {"bound_eq1", optional_stat(p.bound_eq1)},
                         {"bound_coverage", optional_value(p.bound_coverage)},
                         {"seeds_used", p.seeds_used},
                         {"pred_train", p.pred_train},
                         {"pred_test", p.pred_test},
                         {"pred_kernel_err", optional_value(p.pred_kernel_err)},
                         {"fit_point", p.fit_point}});
    }
    j = nlohmann::json{{"config", r.config},
                       {"simd", r.simd},
                       {"curve", std::move(curve)},
                       {"models",
                        {{"train_accuracy", r.train_model},
                         {"test_accuracy", r.test_model},
                         {"kernel_error", r.kernel_model ? nlohmann::json(*r.kernel_model) : nlohmann::json(nullptr)}}},
                       {"warnings", r.warnings},
                       {"started_at", r.started_at},
                       {"finished_at", r.finished_at}};
}

void from_json(const nlohmann::json& j, ExperimentReport& r) {
    try {
        r.config = ExperimentConfig{};
        from_json(j.at("config"), r.config);
        r.simd = j.at("simd").get<std::string>();
        r.curve.clear();
        for (const auto& p : j.at("curve")) {
            CurvePoint point;
            point.c = p.at("c").get<Index>();
            point.train_acc = *read_optional_stat(p.at("train_acc"));
            point.test_acc = *read_optional_stat(p.at("test_acc"));
            point.code_err = read_optional_stat(p.at("code_err"));
            point.kernel_err = read_optional_stat(p.at("kernel_err"));
            point.bound_eq1 = read_optional_stat(p.at("bound_eq1"));
            point.bound_coverage = read_optional<double>(p.at("bound_coverage"));
            point.seeds_used = p.at("seeds_used").get<int>();
            point.pred_train = p.at("pred_train").get<double>();
            point.pred_test = p.at("pred_test").get<double>();
            point.pred_kernel_err = read_optional<double>(p.at("pred_kernel_err"));
            point.fit_point = p.at("fit_point").get<bool>();
            r.curve.push_back(point);
        }
        const auto& models = j.at("models");
        r.train_model = models.at("train_accuracy").get<SaturationModel>();
        r.test_model = models.at("test_accuracy").get<SaturationModel>();
        r.kernel_model = read_optional<SaturationModel>(models.at("kernel_error"));
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.started_at = j.at("started_at").get<std::string>();
        r.finished_at = j.at("finished_at").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed experiment report: ") + e.what());
    }
}

void to_json(nlohmann::json& j, const PdlReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const PdlRow& row : r.rows) {
        rows.push_back({{"final_c", row.final_c},
                        {"overshoot", row.overshoot},
                        {"train_acc", {{"mean", row.train_acc.mean}, {"std", row.train_acc.std}}},
                        {"test_acc", {{"mean", row.test_acc.mean}, {"std", row.test_acc.std}}},
                        {"test_acc_per_seed", row.test_acc_per_seed},
                        {"delta", row.delta}});
    }
    j = nlohmann::json{{"config", r.config},       {"simd", r.simd},
                       {"rows", std::move(rows)},  {"warnings", r.warnings},
                       {"started_at", r.started_at}, {"finished_at", r.finished_at}};
}

std::string curve_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << kCurveCsvHeader << '\n';
    for (const CurvePoint& p : report.curve) {
        out << p.c << ',' << format_double(p.train_acc.mean) << ',' << format_double(p.test_acc.mean) << ','
            << format_double(p.pred_train) << ',' << format_double(p.pred_test) << ','
            << optional_field(p.code_err ? std::optional<double>(p.code_err->mean) : std::nullopt) << ','
            << optional_field(p.kernel_err ? std::optional<double>(p.kernel_err->mean) : std::nullopt) << ','
            << optional_field(p.bound_eq1 ? std::optional<double>(p.bound_eq1->mean) : std::nullopt) << '\n';
    }
    return out.str();
}

std::string pdl_csv(const PdlReport& report) {
    std::ostringstream out;
    out << kPdlCsvHeader << '\n';
    for (const PdlRow& row : report.rows) {
        out << row.final_c << ',' << row.overshoot << ',' << format_double(row.train_acc.mean) << ','
            << format_double(row.test_acc.mean) << ',' << format_double(row.test_acc.std) << ','
            << format_double(row.delta) << '\n';
    }
    return out.str();
}

void emit(const ExperimentReport& report, const std::filesystem::path& path, ReportFormat format) {
    write_file(path, format == ReportFormat::json ? nlohmann::json(report).dump(2) + "\n" : curve_csv(report));
}

void emit(const PdlReport& report, const std::filesystem::path& path, ReportFormat format) {
    write_file(path, format == ReportFormat::json ? nlohmann::json(report).dump(2) + "\n" : pdl_csv(report));
}

}  // namespace ncode
