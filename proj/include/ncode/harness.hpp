#pragma once

#include "ncode/bounds.hpp"
#include "ncode/config.hpp"
#include "ncode/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ncode {

struct Stat {
    double mean = 0.0;
    double std = 0.0;  ///< sample standard deviation; 0 for a single seed
};

[[nodiscard]] Stat summarize(const std::vector<double>& values);

struct CurvePoint {
    Index c = 0;
    Stat train_acc;
    Stat test_acc;
    std::optional<Stat> code_err;
    std::optional<Stat> kernel_err;
    std::optional<Stat> bound_eq1;
    /// Fraction of seeds with code_err <= bound_eq1.
    std::optional<double> bound_coverage;
    int seeds_used = 0;
    double pred_train = 0.0;
    double pred_test = 0.0;
    std::optional<double> pred_kernel_err;
    bool fit_point = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string simd;
    std::vector<CurvePoint> curve;
    SaturationModel train_model;
    SaturationModel test_model;
    std::optional<SaturationModel> kernel_model;
    std::vector<std::string> warnings;
    std::string started_at;
    std::string finished_at;
};

/// Accuracy (and, for small N, Nystrom error and bound) versus codebook
/// size, with saturation models fitted on two grid points.
[[nodiscard]] ExperimentReport run_curve(const ExperimentConfig& config);

struct PdlRow {
    Index final_c = 0;
    int overshoot = 1;
    Stat train_acc;
    Stat test_acc;
    std::vector<double> test_acc_per_seed;
    double delta = 0.0;  ///< test_acc.mean minus the overshoot = 1 row
};

struct PdlReport {
    ExperimentConfig config;
    std::string simd;
    std::vector<PdlRow> rows;  ///< ordered by (final_c, overshoot)
    std::vector<std::string> warnings;
    std::string started_at;
    std::string finished_at;
};

/// Pooled-feature accuracy of pooling-aware dictionaries per (final_c,
/// overshoot); overshoot 1 is plain k-means and serves as the baseline.
[[nodiscard]] PdlReport run_pdl_compare(const ExperimentConfig& config);

/// Sorted, de-duplicated grid; throws when fewer than three sizes remain.
[[nodiscard]] std::vector<Index> normalize_grid(const std::vector<Index>& grid);

enum class ReportFormat { json, csv };

inline constexpr const char* kCurveCsvHeader = "c,train_acc,test_acc,pred_train,pred_test,code_err,kernel_err,bound_eq1";
inline constexpr const char* kPdlCsvHeader = "final_c,overshoot,train_acc,test_acc,test_acc_std,delta";

void to_json(nlohmann::json& j, const ExperimentReport& report);
void from_json(const nlohmann::json& j, ExperimentReport& report);
void to_json(nlohmann::json& j, const PdlReport& report);

[[nodiscard]] std::string curve_csv(const ExperimentReport& report);
[[nodiscard]] std::string pdl_csv(const PdlReport& report);

/// JSON: the full report. CSV: the plot table only.
void emit(const ExperimentReport& report, const std::filesystem::path& path, ReportFormat format);
void emit(const PdlReport& report, const std::filesystem::path& path, ReportFormat format);

/// %.17g, which round-trips doubles exactly.
[[nodiscard]] std::string format_double(double value);

}  // namespace ncode
