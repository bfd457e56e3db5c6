// Command-line front end: synthetic data, accuracy curves, PDL comparisons,
// Nystrom diagnostics and encoding.
//
// Exit codes: 0 success, 2 argument/config error, 3 data-format error,
// 4 internal numerical failure.

#include "ncode/bounds.hpp"
#include "ncode/coding.hpp"
#include "ncode/config.hpp"
#include "ncode/data.hpp"
#include "ncode/dictionary.hpp"
#include "ncode/harness.hpp"
#include "ncode/nystrom.hpp"
#include "ncode/spectra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace ncode;

struct GlobalOptions {
    std::optional<Seed> seed;
    std::string out;
    std::string format = "json";
    std::string config;
};

ReportFormat parse_format(const std::string& text) {
    if (text == "json") {
        return ReportFormat::json;
    }
    if (text == "csv") {
        return ReportFormat::csv;
    }
    throw ArgumentError("--format must be json or csv");
}

ExperimentConfig make_config(const GlobalOptions& g) {
    ExperimentConfig config = g.config.empty() ? ExperimentConfig{} : load_config(g.config);
    if (g.seed) {
        config.seed = *g.seed;
    }
    validate(config);
    return config;
}

void write_output(const GlobalOptions& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary);
    if (!out || !(out << text)) {
        throw FormatError("cannot write " + g.out);
    }
}

DataMatrix preprocess(const DataMatrix& x, Preprocess mode) {
    switch (mode) {
        case Preprocess::mean_center:
            return normalize_columns(x, NormalizeMode::mean_center).data;
        case Preprocess::unit_l2:
            return normalize_columns(x, NormalizeMode::unit_l2).data;
        case Preprocess::both:
            return normalize_columns(x, NormalizeMode::both).data;
        case Preprocess::none:
            break;
    }
    return x;
}

std::string matrix_csv(const Matrix& rows) {
    std::ostringstream out;
    for (Index i = 0; i < rows.rows(); ++i) {
        for (Index j = 0; j < rows.cols(); ++j) {
            out << (j > 0 ? "," : "") << format_double(rows(i, j));
        }
        out << '\n';
    }
    return out.str();
}

struct SynthOptions {
    Index d = 32;
    Index k = 4;
    Index n = 800;
    double noise = 0.05;
    int classes = 4;
};

int run_synth(const GlobalOptions& g, const SynthOptions& o) {
    const Seed seed = g.seed.value_or(0);
    LabeledDataset data = o.classes >= 2 ? synth_labeled_manifold(o.d, o.k, o.n, o.noise, o.classes, seed)
                                         : LabeledDataset{synth_manifold(o.d, o.k, o.n, o.noise, seed), {}, 0, {}};
    if (g.out.empty()) {
        throw ArgumentError("synth: --out is required");
    }
    save_csv(g.out, data);
    return 0;
}

int run_curve_cmd(const GlobalOptions& g) {
    const ExperimentReport report = run_curve(make_config(g));
    for (const std::string& w : report.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    const ReportFormat format = parse_format(g.format);
    if (g.out.empty()) {
        std::cout << (format == ReportFormat::json ? nlohmann::json(report).dump(2) + "\n" : curve_csv(report));
    } else {
        emit(report, g.out, format);
    }
    return 0;
}

int run_pdl_cmd(const GlobalOptions& g) {
    const PdlReport report = run_pdl_compare(make_config(g));
    for (const std::string& w : report.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    const ReportFormat format = parse_format(g.format);
    if (g.out.empty()) {
        std::cout << (format == ReportFormat::json ? nlohmann::json(report).dump(2) + "\n" : pdl_csv(report));
    } else {
        emit(report, g.out, format);
    }
    return 0;
}

struct DataOptions {
    std::string path;
    bool labels = false;
    bool header = false;
};

int run_nystrom_eval(const GlobalOptions& g, const DataOptions& d, const std::vector<Index>& sizes) {
    const ExperimentConfig config = make_config(g);
    const LabeledDataset raw = load_csv(d.path, d.labels, d.header);
    const DataMatrix x = preprocess(raw.data, config.normalize);
    const Matrix full = full_code(x, config.alpha).values();
    const Matrix kernel = gram_kernel(full);
    const SpectralReport spectral = spectral_report(full, config.energy);

    nlohmann::json points = nlohmann::json::array();
    std::ostringstream csv;
    csv << "c,code_err,kernel_err,bound_eq1\n";
    for (const Index c : sizes) {
        const std::vector<Index> indices = sample_indices(x.size(), c, derive_seed(config.seed, 100 + c));
        const NystromFactors f = decompose(full, indices, config.pinv_tol);
        const ApproximationErrors err = approximation_errors(full, kernel, f);
        const double bound = column_sampling_bound(spectral, c);
        points.push_back({{"c", c},
                          {"code_err", err.code_err},
                          {"kernel_err", err.kernel_err},
                          {"epsilon", spectral.k > 0 ? epsilon_min(c, spectral.k) : 0.0},
                          {"bound_eq1", bound}});
        csv << c << ',' << format_double(err.code_err) << ',' << format_double(err.kernel_err) << ','
            << format_double(bound) << '\n';
    }
    if (parse_format(g.format) == ReportFormat::csv) {
        write_output(g, csv.str());
        return 0;
    }
    const nlohmann::json out{{"samples", x.size()},
                             {"alpha", config.alpha},
                             {"energy", config.energy},
                             {"k", spectral.k},
                             {"rank_k_residual", spectral.rank_k_residual},
                             {"scaled_diag_max", spectral.scaled_diag_max},
                             {"seed", config.seed},
                             {"points", points}};
    write_output(g, out.dump(2) + "\n");
    return 0;
}

int run_encode(const GlobalOptions& g, const DataOptions& d, const std::string& dictionary_path,
               std::optional<Index> sample_c) {
    const ExperimentConfig config = make_config(g);
    const LabeledDataset raw = load_csv(d.path, d.labels, d.header);
    const DataMatrix x = preprocess(raw.data, config.normalize);
    std::optional<Dictionary> dict;
    if (!dictionary_path.empty()) {
        const LabeledDataset atoms = load_csv(dictionary_path, false, false);
        dict = Dictionary{atoms.data.values(), DictionarySource::kmeans};
    } else if (sample_c) {
        dict = Dictionary::from_samples(x, sample_indices(x.size(), *sample_c, derive_seed(config.seed, 100 + *sample_c)));
    } else {
        throw ArgumentError("encode: pass --dictionary <csv> or --sample <c>");
    }
    const CodeMatrix codes = encode(x, *dict, config.alpha);
    write_output(g, matrix_csv(codes.values()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold feature coding: accuracy curves, Nystrom bounds and pooling-aware dictionaries"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Master seed");
    app.add_option("--out", g.out, "Output path (stdout when omitted)");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", g.config, "Flat JSON config file");

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a labelled low-rank manifold dataset as CSV");
    synth_cmd->add_option("--d", synth.d, "Feature dimension");
    synth_cmd->add_option("--k", synth.k, "Manifold dimension");
    synth_cmd->add_option("--n", synth.n, "Sample count");
    synth_cmd->add_option("--noise", synth.noise, "Noise standard deviation");
    synth_cmd->add_option("--classes", synth.classes, "Class count (0 writes unlabelled data)");

    auto* curve_cmd = app.add_subcommand("curve", "Accuracy versus codebook size with saturation fit");
    auto* pdl_cmd = app.add_subcommand("pdl", "Pooling-aware dictionary learning against the k-means baseline");

    DataOptions data;
    std::vector<Index> sizes{16, 32, 64};
    auto* nys_cmd = app.add_subcommand("nystrom-eval", "Nystrom errors and bound for a CSV dataset");
    nys_cmd->add_option("--data", data.path, "CSV file, one sample per row")->required();
    nys_cmd->add_flag("--labels", data.labels, "Last field is a label");
    nys_cmd->add_flag("--header", data.header, "Skip the first line");
    nys_cmd->add_option("--c", sizes, "Sampled column counts");

    std::string dictionary_path;
    std::optional<Index> sample_c;
    auto* enc_cmd = app.add_subcommand("encode", "Threshold-encode a CSV dataset");
    enc_cmd->add_option("--data", data.path, "CSV file, one sample per row")->required();
    enc_cmd->add_flag("--labels", data.labels, "Last field is a label");
    enc_cmd->add_flag("--header", data.header, "Skip the first line");
    enc_cmd->add_option("--dictionary", dictionary_path, "CSV of atoms, one per row");
    enc_cmd->add_option("--sample", sample_c, "Use c sampled training columns as the dictionary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*synth_cmd) {
            return run_synth(g, synth);
        }
        if (*curve_cmd) {
            return run_curve_cmd(g);
        }
        if (*pdl_cmd) {
            return run_pdl_cmd(g);
        }
        if (*nys_cmd) {
            return run_nystrom_eval(g, data, sizes);
        }
        if (*enc_cmd) {
            return run_encode(g, data, dictionary_path, sample_c);
        }
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 2;
}
