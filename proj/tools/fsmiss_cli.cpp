// fsmiss command-line driver: profile, run, summarize, export.

#include "fsmiss/fsmiss.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Overrides {
    std::optional<std::string> nfe, pop, theta, seed, runs, algo, output, threads, k, folds;

    void apply(fsmiss::ExperimentConfig& cfg) const {
        const std::pair<const char*, const std::optional<std::string>*> keyed[] = {
            {"nfe", &nfe},         {"pop", &pop},       {"theta", &theta},       {"seed", &seed},
            {"runs", &runs},       {"algo", &algo},     {"threads", &threads},   {"k", &k},
            {"folds", &folds},
        };
        for (const auto& [key, value] : keyed) {
            if (*value) fsmiss::apply_setting(cfg, key, **value);
        }
        if (output) cfg.output_dir = *output;
    }
};

fsmiss::LabelPosition parse_label_position(const std::string& s) {
    if (s == "first") return fsmiss::LabelPosition::first;
    if (s == "last") return fsmiss::LabelPosition::last;
    throw fsmiss::config_error("label position must be 'first' or 'last'");
}

int qualitative_hv_claim(const fsmiss::SummaryTable& table, std::ostream& out) {
    // counts datasets where nsga3's mean train HV is at least nsga2's
    std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> hv;
    for (const auto& r : table.rows) {
        if (r.metric != "HV" || r.split != "train") continue;
        if (r.algorithm == "nsga3") hv[r.dataset].first = r.mean;
        if (r.algorithm == "nsga2") hv[r.dataset].second = r.mean;
    }
    int compared = 0;
    int not_worse = 0;
    for (const auto& [ds, pair] : hv) {
        if (!pair.first || !pair.second) continue;
        ++compared;
        if (*pair.first >= *pair.second) ++not_worse;
    }
    if (compared > 0) {
        out << "nsga3 mean train HV >= nsga2 on " << not_worse << " of " << compared << " dataset(s)\n";
    }
    return compared;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-objective feature selection on incomplete data (NSGA-III / NSGA-II)"};
    app.require_subcommand(1);

    // profile
    auto* profile = app.add_subcommand("profile", "Print dataset statistics and missing-value profile");
    std::string profile_path;
    std::string label_position = "last";
    std::string missing_token = "?";
    bool header = false;
    profile->add_option("dataset", profile_path, "CSV file")->required();
    profile->add_option("--label", label_position, "Class label column: first or last")->capture_default_str();
    profile->add_option("--missing", missing_token, "Token marking a missing cell")->capture_default_str();
    profile->add_flag("--header", header, "Skip one header line");

    // run
    auto* run = app.add_subcommand("run", "Run an experiment described by a key=value config file");
    std::string config_path;
    Overrides ov;
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--nfe", ov.nfe, "Evaluation budget per run");
    run->add_option("--pop", ov.pop, "Population size");
    run->add_option("--theta", ov.theta, "Selection threshold");
    run->add_option("--seed", ov.seed, "Base seed");
    run->add_option("--runs", ov.runs, "Runs per dataset and algorithm");
    run->add_option("--algo", ov.algo, "Comma-separated algorithms (nsga3, nsga2, random)");
    run->add_option("--output", ov.output, "Output directory");
    run->add_option("--threads", ov.threads, "Evaluation threads");
    run->add_option("--k", ov.k, "Neighbours for K-NN");
    run->add_option("--folds", ov.folds, "Cross-validation folds");

    // summarize
    auto* summarize = app.add_subcommand("summarize", "Compute IGD/HV summary tables from run records");
    std::string summary_dir;
    std::string reference = "nsga3";
    std::string summary_csv_path;
    summarize->add_option("records-dir", summary_dir, "Experiment output or records directory")->required();
    summarize->add_option("--reference", reference, "Algorithm the significance marks compare against")
        ->capture_default_str();
    summarize->add_option("--csv", summary_csv_path, "CSV output path (default <records-dir>/summary.csv)");

    // export
    auto* exp = app.add_subcommand("export", "Write plot-ready front CSV files from run records");
    std::string export_dir;
    std::string export_out;
    exp->add_option("records-dir", export_dir, "Experiment output or records directory")->required();
    exp->add_option("--out", export_out, "Output directory (default <records-dir>/fronts)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*profile) {
            fsmiss::LoadOptions opts;
            opts.label_position = parse_label_position(label_position);
            opts.missing_token = missing_token;
            opts.skip_header = header;
            const auto ds = fsmiss::load_dataset(profile_path, opts);
            std::cout << fsmiss::profile_report(ds);
            return 0;
        }
        if (*run) {
            auto cfg = fsmiss::load_config(config_path);
            ov.apply(cfg);
            const auto records = fsmiss::run_experiment(cfg, std::cerr);
            if (records.empty()) {
                std::cerr << "error: no runs completed\n";
                return 1;
            }
            std::cout << "wrote " << records.size() << " run records to " << cfg.output_dir << '\n';
            return 0;
        }
        if (*summarize) {
            const auto records = fsmiss::load_records(summary_dir);
            if (records.empty()) {
                std::cerr << "error: no run records found in '" << summary_dir << "'\n";
                return 1;
            }
            const auto table = fsmiss::summarize(records, reference);
            std::cout << fsmiss::summary_text(table);
            qualitative_hv_claim(table, std::cout);
            const auto csv_path =
                summary_csv_path.empty() ? (std::filesystem::path(summary_dir) / "summary.csv").string() : summary_csv_path;
            fsmiss::write_text_file(csv_path, fsmiss::summary_csv(table));
            return 0;
        }
        if (*exp) {
            const auto records = fsmiss::load_records(export_dir);
            if (records.empty()) {
                std::cerr << "error: no run records found in '" << export_dir << "'\n";
                return 1;
            }
            const auto out = export_out.empty() ? std::filesystem::path(export_dir) / "fronts"
                                                : std::filesystem::path(export_out);
            fsmiss::export_fronts(records, out);
            std::cout << "wrote fronts to " << out.string() << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
