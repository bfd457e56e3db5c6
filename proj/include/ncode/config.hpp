#pragma once

#include "ncode/coding.hpp"
#include "ncode/data.hpp"
#include "ncode/pooling_pdl.hpp"
#include "ncode/spectra.hpp"
#include "ncode/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ncode {

enum class DatasetKind { synthetic, csv, cifar10 };
enum class DictionaryKind { sampled, kmeans };
enum class Preprocess { none, mean_center, unit_l2, both };

/// Every experiment parameter. Serialised as a flat JSON object; unknown
/// keys are rejected on load.
struct ExperimentConfig {
    DatasetKind dataset = DatasetKind::synthetic;
    std::string data_path;
    bool csv_header = false;

    Index synth_d = 32;
    Index synth_k = 4;
    Index synth_n = 800;
    double synth_noise = 0.3;
    int synth_classes = 4;

    std::vector<Index> c_grid{8, 16, 32, 64, 128};
    std::vector<Index> fit_c;  ///< empty: the two smallest grid sizes
    Seed seed = 0;
    int num_seeds = 5;

    double alpha = kDefaultAlpha;
    std::optional<double> lambda;  ///< absolute ridge coefficient; unset: lambda_scale * N_train
    double lambda_scale = 1e-3;
    double energy = kDefaultEnergy;
    DictionaryKind dictionary = DictionaryKind::sampled;
    int kmeans_iters = 50;
    Preprocess normalize = Preprocess::unit_l2;
    double train_fraction = 0.8;
    Index diagnostics_limit = 2000;
    double pinv_tol = 1e-10;

    int pdl_images = 200;
    int image_size = 8;
    double texture_noise = 0.5;
    int patch = 4;
    int stride = 4;
    int pool_rows = 2;
    int pool_cols = 2;
    PoolOp pool_op = PoolOp::average;
    Preprocess patch_normalize = Preprocess::both;
    std::vector<Index> final_c_grid{16};
    std::vector<int> overshoot{1, 2};
};

void to_json(nlohmann::json& j, const ExperimentConfig& config);
/// Throws ArgumentError for unknown keys, wrong types or invalid values.
void from_json(const nlohmann::json& j, ExperimentConfig& config);

[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Range checks shared by every entry point.
void validate(const ExperimentConfig& config);

}  // namespace ncode
