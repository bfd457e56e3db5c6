#include "ncode/bounds.hpp"

#include <cmath>
#include <string>

namespace ncode {

double quarter_power_decay(double c) { return 1.0 / std::sqrt(std::sqrt(c)); }

double epsilon_min(Index c, Index k) {
    if (c < 1 || k < 1) {
        throw ArgumentError("epsilon_min: need c >= 1 and k >= 1");
    }
    return std::sqrt(std::sqrt(64.0 * static_cast<double>(k) / static_cast<double>(c)));
}

double column_sampling_bound(const SpectralReport& report, Index c) {
    // k = 0 only happens for a zero matrix, where the error is zero too.
    if (report.k == 0) {
        return report.rank_k_residual;
    }
    return report.rank_k_residual + epsilon_min(c, report.k) * report.scaled_diag_max;
}

SaturationModel fit_two_point(FitPoint p1, FitPoint p2, ModelForm form) {
    if (!(p1.c >= 1.0) || !(p2.c >= 1.0)) {
        throw ArgumentError("fit_two_point: codebook sizes must be >= 1");
    }
    if (p1.c == p2.c) {
        throw ArgumentError("fit_two_point: the two codebook sizes must differ (c=" + std::to_string(p1.c) + ")");
    }
    if (!std::isfinite(p1.value) || !std::isfinite(p2.value)) {
        throw ArgumentError("fit_two_point: values must be finite");
    }
    const double t1 = quarter_power_decay(p1.c);
    const double t2 = quarter_power_decay(p2.c);
    const double sign = form == ModelForm::error ? 1.0 : -1.0;
    const double slope = sign * (p1.value - p2.value) / (t1 - t2);
    const double offset = p1.value - sign * slope * t1;
    return SaturationModel{form, offset, slope, {p1, p2}};
}

double predict(const SaturationModel& model, double c) {
    if (!(c >= 1.0)) {
        throw ArgumentError("predict: codebook size must be >= 1");
    }
    const double t = quarter_power_decay(c);
    return model.form == ModelForm::error ? model.offset + model.slope * t : model.offset - model.slope * t;
}

void to_json(nlohmann::json& j, const SaturationModel& model) {
    j = nlohmann::json{{"form", model.form == ModelForm::error ? "error" : "accuracy"},
                       {"offset", model.offset},
                       {"slope", model.slope},
                       {"fit_points",
                        {{model.fit_points[0].c, model.fit_points[0].value},
                         {model.fit_points[1].c, model.fit_points[1].value}}}};
}

void from_json(const nlohmann::json& j, SaturationModel& model) {
    const std::string form = j.at("form").get<std::string>();
    if (form != "error" && form != "accuracy") {
        throw FormatError("saturation model: unknown form '" + form + "'");
    }
    model.form = form == "error" ? ModelForm::error : ModelForm::accuracy;
    model.offset = j.at("offset").get<double>();
    model.slope = j.at("slope").get<double>();
    const auto& pts = j.at("fit_points");
    if (!pts.is_array() || pts.size() != 2) {
        throw FormatError("saturation model: fit_points must hold two [c, value] pairs");
    }
    for (std::size_t i = 0; i < 2; ++i) {
        model.fit_points[i] = FitPoint{pts[i].at(0).get<double>(), pts[i].at(1).get<double>()};
    }
}

}  // namespace ncode
