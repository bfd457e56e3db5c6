#pragma once

#include "ncode/spectra.hpp"
#include "ncode/types.hpp"

#include <json.hpp>

#include <array>

namespace ncode {

/// error:    value(c) = offset + slope * c^(-1/4)
/// accuracy: value(c) = offset - slope * c^(-1/4)  (offset is the asymptote)
enum class ModelForm { error, accuracy };

struct FitPoint {
    double c = 0.0;
    double value = 0.0;
};

struct SaturationModel {
    ModelForm form = ModelForm::error;
    double offset = 0.0;
    double slope = 0.0;
    std::array<FitPoint, 2> fit_points{};

    /// An accuracy model with negative slope does not approach its offset from below.
    [[nodiscard]] bool saturates_from_below() const noexcept { return form != ModelForm::accuracy || slope >= 0.0; }
};

/// c^(-1/4).
[[nodiscard]] double quarter_power_decay(double c);

/// Smallest epsilon meeting c >= 64 k / eps^4, i.e. (64 k / c)^(1/4).
[[nodiscard]] double epsilon_min(Index c, Index k);

/// ||C - C_k||_F + epsilon_min(c, k) * N max_i C_ii.
[[nodiscard]] double column_sampling_bound(const SpectralReport& report, Index c);

/// Exact interpolation of two (c, value) observations; c values must differ.
[[nodiscard]] SaturationModel fit_two_point(FitPoint p1, FitPoint p2, ModelForm form);

[[nodiscard]] double predict(const SaturationModel& model, double c);

void to_json(nlohmann::json& j, const SaturationModel& model);
void from_json(const nlohmann::json& j, SaturationModel& model);

}  // namespace ncode
