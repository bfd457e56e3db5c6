#include "ncode/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

namespace ncode {

namespace {

template <typename Enum>
struct EnumNames {
    std::vector<std::pair<Enum, std::string>> names;

    std::string to_string(Enum value) const {
        for (const auto& [e, s] : names) {
            if (e == value) {
                return s;
            }
        }
        return "?";
    }
    Enum parse(const std::string& key, const std::string& text) const {
        std::string allowed;
        for (const auto& [e, s] : names) {
            if (s == text) {
                return e;
            }
            allowed += (allowed.empty() ? "" : ", ") + s;
        }
        throw ArgumentError("config '" + key + "': unknown value '" + text + "' (expected one of " + allowed + ")");
    }
};

const EnumNames<DatasetKind> kDatasets{{{DatasetKind::synthetic, "synthetic"},
                                        {DatasetKind::csv, "csv"},
                                        {DatasetKind::cifar10, "cifar10"}}};
const EnumNames<DictionaryKind> kDictionaries{{{DictionaryKind::sampled, "sampled"}, {DictionaryKind::kmeans, "kmeans"}}};
const EnumNames<Preprocess> kPreprocess{{{Preprocess::none, "none"},
                                         {Preprocess::mean_center, "mean_center"},
                                         {Preprocess::unit_l2, "unit_l2"},
                                         {Preprocess::both, "both"}}};
const EnumNames<PoolOp> kPoolOps{{{PoolOp::average, "average"}, {PoolOp::max, "max"}}};

template <typename T>
T get_as(const nlohmann::json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ArgumentError("config '" + key + "': wrong type (" + value.dump() + ")");
    }
}

using Setter = std::function<void(ExperimentConfig&, const nlohmann::json&, const std::string&)>;

template <typename T, typename Field>
Setter field(Field ExperimentConfig::*member) {
    return [member](ExperimentConfig& c, const nlohmann::json& v, const std::string& key) {
        c.*member = get_as<T>(v, key);
    };
}

template <typename Enum>
Setter enum_field(Enum ExperimentConfig::*member, const EnumNames<Enum>& names) {
    return [member, &names](ExperimentConfig& c, const nlohmann::json& v, const std::string& key) {
        c.*member = names.parse(key, get_as<std::string>(v, key));
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"dataset", enum_field(&ExperimentConfig::dataset, kDatasets)},
        {"data_path", field<std::string>(&ExperimentConfig::data_path)},
        {"csv_header", field<bool>(&ExperimentConfig::csv_header)},
        {"synth_d", field<Index>(&ExperimentConfig::synth_d)},
        {"synth_k", field<Index>(&ExperimentConfig::synth_k)},
        {"synth_n", field<Index>(&ExperimentConfig::synth_n)},
        {"synth_noise", field<double>(&ExperimentConfig::synth_noise)},
        {"synth_classes", field<int>(&ExperimentConfig::synth_classes)},
        {"c_grid", field<std::vector<Index>>(&ExperimentConfig::c_grid)},
        {"fit_c", field<std::vector<Index>>(&ExperimentConfig::fit_c)},
        {"seed", field<Seed>(&ExperimentConfig::seed)},
        {"num_seeds", field<int>(&ExperimentConfig::num_seeds)},
        {"alpha", field<double>(&ExperimentConfig::alpha)},
        {"lambda",
         [](ExperimentConfig& c, const nlohmann::json& v, const std::string& key) {
             if (v.is_null()) {
                 c.lambda.reset();
             } else {
                 c.lambda = get_as<double>(v, key);
             }
         }},
        {"lambda_scale", field<double>(&ExperimentConfig::lambda_scale)},
        {"energy", field<double>(&ExperimentConfig::energy)},
        {"dictionary", enum_field(&ExperimentConfig::dictionary, kDictionaries)},
        {"kmeans_iters", field<int>(&ExperimentConfig::kmeans_iters)},
        {"normalize", enum_field(&ExperimentConfig::normalize, kPreprocess)},
        {"train_fraction", field<double>(&ExperimentConfig::train_fraction)},
        {"diagnostics_limit", field<Index>(&ExperimentConfig::diagnostics_limit)},
        {"pinv_tol", field<double>(&ExperimentConfig::pinv_tol)},
        {"pdl_images", field<int>(&ExperimentConfig::pdl_images)},
        {"image_size", field<int>(&ExperimentConfig::image_size)},
        {"texture_noise", field<double>(&ExperimentConfig::texture_noise)},
        {"patch", field<int>(&ExperimentConfig::patch)},
        {"stride", field<int>(&ExperimentConfig::stride)},
        {"pool_rows", field<int>(&ExperimentConfig::pool_rows)},
        {"pool_cols", field<int>(&ExperimentConfig::pool_cols)},
        {"pool_op", enum_field(&ExperimentConfig::pool_op, kPoolOps)},
        {"patch_normalize", enum_field(&ExperimentConfig::patch_normalize, kPreprocess)},
        {"final_c_grid", field<std::vector<Index>>(&ExperimentConfig::final_c_grid)},
        {"overshoot", field<std::vector<int>>(&ExperimentConfig::overshoot)},
    };
    return table;
}

}  // namespace

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
    j = nlohmann::json{
        {"dataset", kDatasets.to_string(c.dataset)},
        {"data_path", c.data_path},
        {"csv_header", c.csv_header},
        {"synth_d", c.synth_d},
        {"synth_k", c.synth_k},
        {"synth_n", c.synth_n},
        {"synth_noise", c.synth_noise},
        {"synth_classes", c.synth_classes},
        {"c_grid", c.c_grid},
        {"fit_c", c.fit_c},
        {"seed", c.seed},
        {"num_seeds", c.num_seeds},
        {"alpha", c.alpha},
        {"lambda", c.lambda ? nlohmann::json(*c.lambda) : nlohmann::json(nullptr)},
        {"lambda_scale", c.lambda_scale},
        {"energy", c.energy},
        {"dictionary", kDictionaries.to_string(c.dictionary)},
        {"kmeans_iters", c.kmeans_iters},
        {"normalize", kPreprocess.to_string(c.normalize)},
        {"train_fraction", c.train_fraction},
        {"diagnostics_limit", c.diagnostics_limit},
        {"pinv_tol", c.pinv_tol},
        {"pdl_images", c.pdl_images},
        {"image_size", c.image_size},
        {"texture_noise", c.texture_noise},
        {"patch", c.patch},
        {"stride", c.stride},
        {"pool_rows", c.pool_rows},
        {"pool_cols", c.pool_cols},
        {"pool_op", kPoolOps.to_string(c.pool_op)},
        {"patch_normalize", kPreprocess.to_string(c.patch_normalize)},
        {"final_c_grid", c.final_c_grid},
        {"overshoot", c.overshoot},
    };
}

void from_json(const nlohmann::json& j, ExperimentConfig& config) {
    if (!j.is_object()) {
        throw ArgumentError("config must be a JSON object");
    }
    const auto& table = setters();
    for (const auto& [key, value] : j.items()) {
        const auto it = table.find(key);
        if (it == table.end()) {
            throw ArgumentError("config: unknown key '" + key + "'");
        }
        it->second(config, value, key);
    }
    validate(config);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ArgumentError("cannot open config file " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ArgumentError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    ExperimentConfig config;
    from_json(j, config);
    return config;
}

void validate(const ExperimentConfig& c) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) {
            throw ArgumentError("config: " + what);
        }
    };
    require(c.dataset == DatasetKind::synthetic || !c.data_path.empty(), "data_path is required for file datasets");
    require(c.synth_d >= 1 && c.synth_k >= 1 && c.synth_n >= 2, "synthetic dimensions must be positive");
    require(c.synth_k <= std::min(c.synth_d, c.synth_n), "synth_k must not exceed min(synth_d, synth_n)");
    require(c.synth_noise >= 0.0, "synth_noise must be >= 0");
    require(c.synth_classes >= 2, "synth_classes must be >= 2");
    for (const Index v : c.c_grid) {
        require(v >= 1, "c_grid values must be >= 1");
    }
    require(c.fit_c.empty() || (c.fit_c.size() == 2 && c.fit_c[0] != c.fit_c[1]),
            "fit_c must be empty or two distinct sizes");
    require(c.num_seeds >= 1, "num_seeds must be >= 1");
    require(std::isfinite(c.alpha), "alpha must be finite");
    require(!c.lambda || *c.lambda > 0.0, "lambda must be > 0");
    require(c.lambda_scale > 0.0, "lambda_scale must be > 0");
    require(c.energy > 0.0 && c.energy <= 1.0, "energy must lie in (0, 1]");
    require(c.kmeans_iters >= 1, "kmeans_iters must be >= 1");
    require(c.train_fraction > 0.0 && c.train_fraction < 1.0, "train_fraction must lie in (0, 1)");
    require(c.pinv_tol >= 0.0, "pinv_tol must be >= 0");
    require(c.pdl_images >= 4, "pdl_images must be >= 4");
    require(c.image_size >= 1 && c.patch >= 1 && c.stride >= 1, "image_size, patch and stride must be positive");
    require(c.patch <= c.image_size, "patch must not exceed image_size");
    require(c.pool_rows >= 1 && c.pool_cols >= 1, "pooling regions must be positive");
    for (const Index v : c.final_c_grid) {
        require(v >= 1, "final_c_grid values must be >= 1");
    }
    for (const int v : c.overshoot) {
        require(v >= 1, "overshoot factors must be >= 1");
    }
}

}  // namespace ncode
