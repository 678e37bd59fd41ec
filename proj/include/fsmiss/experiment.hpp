#ifndef FSMISS_EXPERIMENT_HPP
#define FSMISS_EXPERIMENT_HPP

/*
 Experiment driver: datasets x algorithms x runs, record persistence,
 summary tables with Welch significance marks, plot-ready front exports.

 Output directory layout written by run_experiment:

   records/<dataset>__<algorithm>__run<NNN>.txt   one file per run
   manifest.csv                                  one line per record
   fronts/<dataset>__<algorithm>__<split>.csv     per-algorithm fronts
   fronts/<dataset>__<split>__all.csv             all algorithms, with an algorithm column
   timings.csv                                   wall-clock times (not deterministic)

 Record file: a '#' title line, key=value header lines, then the CSV payload
 with header "split,f1_error,f2_size,f3_missing_pct,mask". Reals are written
 in shortest round-trip form with a trailing ".0" on integral values; lines
 end in '\n'.

 Run r of an experiment uses seed base_seed + r for both the train/test split
 and the search, so every algorithm sees the same split in a given run.
*/

#include "fsmiss/dataset.hpp"
#include "fsmiss/engine.hpp"
#include "fsmiss/error.hpp"
#include "fsmiss/metrics.hpp"
#include "fsmiss/nsga2.hpp"
#include "fsmiss/nsga3.hpp"
#include "fsmiss/objectives.hpp"
#include "fsmiss/random_search.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace fsmiss {

// ---------------------------------------------------------------- formatting

/// Shortest round-trip decimal; integral values keep a ".0" suffix.
inline std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, ptr);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

inline double parse_real_strict(std::string_view token, std::string_view what) {
    const auto v = detail::parse_real(detail::trim(token));
    if (!v) throw parse_error(std::string(what) + ": cannot parse '" + std::string(token) + "' as a number");
    return *v;
}

inline std::uint64_t parse_unsigned(std::string_view token, std::string_view what) {
    token = detail::trim(token);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
        throw parse_error(std::string(what) + ": expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return v;
}

// ---------------------------------------------------------------- configuration

struct DatasetEntry {
    std::string name;
    std::string path;
    LoadOptions load{};
};

struct ExperimentConfig {
    std::vector<DatasetEntry> datasets;
    std::vector<std::string> algorithms{"nsga3", "nsga2"};
    std::size_t runs = 30;
    std::size_t max_evaluations = 100000;
    std::size_t population_size = 100;
    double threshold = 0.6;
    std::size_t k = 5;
    std::size_t folds = 10;
    double train_fraction = 0.7;
    std::size_t divisions = 13;
    VariationParams variation{};
    std::uint64_t base_seed = 1;
    std::string output_dir = "results";
    std::size_t threads = 1;
    std::string reference_algorithm = "nsga3";

    EngineConfig engine_for_seed(std::uint64_t seed) const {
        EngineConfig e;
        e.population_size = population_size;
        e.max_evaluations = max_evaluations;
        e.divisions = divisions;
        e.variation = variation;
        e.eval.threshold = threshold;
        e.eval.knn = {k, folds};
        e.seed = seed;
        e.threads = threads;
        return e;
    }
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view s, char delim) {
    std::vector<std::string> out;
    for (auto part : split_line(s, delim)) {
        if (!part.empty()) out.emplace_back(part);
    }
    return out;
}

/// "name, path[, label=first|last][, header][, missing=TOKEN]"
inline DatasetEntry parse_dataset_entry(std::string_view value, const std::filesystem::path& base_dir) {
    const auto parts = split_list(value, ',');
    if (parts.size() < 2) throw config_error("dataset entry needs 'name, path': '" + std::string(value) + "'");
    DatasetEntry e;
    e.name = parts[0];
    std::filesystem::path p(parts[1]);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    e.path = p.lexically_normal().string();
    for (std::size_t i = 2; i < parts.size(); ++i) {
        const auto& opt = parts[i];
        if (opt == "header") {
            e.load.skip_header = true;
        } else if (opt == "label=first") {
            e.load.label_position = LabelPosition::first;
        } else if (opt == "label=last") {
            e.load.label_position = LabelPosition::last;
        } else if (opt.rfind("missing=", 0) == 0) {
            e.load.missing_token = opt.substr(8);
        } else {
            throw config_error("unknown dataset option '" + opt + "'");
        }
    }
    return e;
}

}  // namespace detail

/// Apply one key=value setting. Keys mirror the command-line flags.
inline void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                          const std::filesystem::path& base_dir = {}) {
    const std::string k(detail::trim(key));
    const std::string_view v = detail::trim(value);
    if (k == "dataset") {
        cfg.datasets.push_back(detail::parse_dataset_entry(v, base_dir));
    } else if (k == "algo" || k == "algorithms") {
        cfg.algorithms = detail::split_list(v, ',');
        if (cfg.algorithms.empty()) throw config_error("algorithm list is empty");
    } else if (k == "runs") {
        cfg.runs = parse_unsigned(v, k);
    } else if (k == "nfe") {
        cfg.max_evaluations = parse_unsigned(v, k);
    } else if (k == "pop") {
        cfg.population_size = parse_unsigned(v, k);
    } else if (k == "theta") {
        cfg.threshold = parse_real_strict(v, k);
    } else if (k == "k") {
        cfg.k = parse_unsigned(v, k);
    } else if (k == "folds") {
        cfg.folds = parse_unsigned(v, k);
    } else if (k == "train_fraction") {
        cfg.train_fraction = parse_real_strict(v, k);
    } else if (k == "divisions") {
        cfg.divisions = parse_unsigned(v, k);
    } else if (k == "seed") {
        cfg.base_seed = parse_unsigned(v, k);
    } else if (k == "output") {
        std::filesystem::path p{std::string(v)};
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        cfg.output_dir = p.lexically_normal().string();
    } else if (k == "threads") {
        cfg.threads = parse_unsigned(v, k);
    } else if (k == "reference_algorithm") {
        cfg.reference_algorithm = std::string(v);
    } else if (k == "pc") {
        cfg.variation.crossover_probability = parse_real_strict(v, k);
    } else if (k == "eta_c") {
        cfg.variation.crossover_index = parse_real_strict(v, k);
    } else if (k == "pm") {
        cfg.variation.mutation_probability = parse_real_strict(v, k);
    } else if (k == "eta_m") {
        cfg.variation.mutation_index = parse_real_strict(v, k);
    } else {
        throw config_error("unknown configuration key '" + k + "'");
    }
}

/// Flat key=value text, '#' starts a comment. Relative paths resolve against base_dir.
inline ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {}) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (detail::trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        }
        apply_setting(cfg, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1), base_dir);
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    return parse_config(in, std::filesystem::path(path).parent_path());
}

inline void validate(const ExperimentConfig& cfg) {
    if (cfg.runs < 1) throw config_error("runs must be at least 1");
    if (cfg.datasets.empty()) throw config_error("no datasets configured");
    if (cfg.algorithms.empty()) throw config_error("no algorithms configured");
    if (cfg.k < 1) throw config_error("k must be at least 1");
    if (cfg.folds < 2) throw config_error("folds must be at least 2");
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) throw config_error("theta must lie in (0, 1)");
    if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
        throw config_error("train_fraction must lie in (0, 1)");
    }
    detail::validate_engine(cfg.engine_for_seed(cfg.base_seed));
}

// ---------------------------------------------------------------- algorithms

using AlgorithmFn = std::function<EvolutionResult(const Evaluator&, const EngineConfig&)>;

inline std::map<std::string, AlgorithmFn>& algorithm_registry() {
    static std::map<std::string, AlgorithmFn> registry{
        {"nsga3", [](const Evaluator& e, const EngineConfig& c) { return nsga3_evolve(e, c); }},
        {"nsga2", [](const Evaluator& e, const EngineConfig& c) { return nsga2_evolve(e, c); }},
        {"random", [](const Evaluator& e, const EngineConfig& c) { return random_search(e, c); }},
    };
    return registry;
}

inline const AlgorithmFn& find_algorithm(const std::string& id) {
    const auto& reg = algorithm_registry();
    const auto it = reg.find(id);
    if (it == reg.end()) throw config_error("unknown algorithm '" + id + "'");
    return it->second;
}

// ---------------------------------------------------------------- records

struct FrontPoint {
    std::string mask;
    ObjectiveVector objectives;

    bool operator==(const FrontPoint&) const = default;
};

inline bool front_point_less(const FrontPoint& a, const FrontPoint& b) {
    return std::tie(a.objectives.error_rate, a.objectives.size, a.objectives.missing_pct, a.mask) <
           std::tie(b.objectives.error_rate, b.objectives.size, b.objectives.missing_pct, b.mask);
}

struct RunRecord {
    std::string dataset;
    std::string algorithm;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::size_t feature_count = 0;
    std::size_t evaluations = 0;
    double wall_time_ms = 0.0;  // kept out of the record file
    std::vector<FrontPoint> train_front;
    std::vector<FrontPoint> test_front;  // same masks as train_front, test-partition objectives

    bool operator==(const RunRecord& o) const {
        return std::tie(dataset, algorithm, run, seed, feature_count, evaluations, train_front, test_front) ==
               std::tie(o.dataset, o.algorithm, o.run, o.seed, o.feature_count, o.evaluations, o.train_front,
                        o.test_front);
    }

    std::string file_name() const {
        std::ostringstream s;
        s << dataset << "__" << algorithm << "__run" << std::setw(3) << std::setfill('0') << run << ".txt";
        return s.str();
    }
};

inline constexpr std::string_view kFrontHeader = "f1_error,f2_size,f3_missing_pct,mask";

inline std::string format_point(const ObjectiveVector& o, const std::string& mask) {
    return format_real(o.error_rate) + ',' + std::to_string(o.size) + ',' + format_real(o.missing_pct) + ',' + mask;
}

inline void write_record(std::ostream& out, const RunRecord& r) {
    out << "# fsmiss run record\n"
        << "dataset=" << r.dataset << '\n'
        << "algorithm=" << r.algorithm << '\n'
        << "run=" << r.run << '\n'
        << "seed=" << r.seed << '\n'
        << "features=" << r.feature_count << '\n'
        << "evaluations=" << r.evaluations << '\n'
        << "front_size=" << r.train_front.size() << '\n'
        << "split," << kFrontHeader << '\n';
    for (const auto& p : r.train_front) out << "train," << format_point(p.objectives, p.mask) << '\n';
    for (const auto& p : r.test_front) out << "test," << format_point(p.objectives, p.mask) << '\n';
}

inline RunRecord read_record(std::istream& in, const std::string& source = "<record>") {
    RunRecord r;
    std::string line;
    bool payload = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (!payload) {
            if (line == "split," + std::string(kFrontHeader)) {
                payload = true;
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw format_error(source + ": bad header line " + std::to_string(line_no));
            const auto key = line.substr(0, eq);
            const auto value = std::string_view(line).substr(eq + 1);
            if (key == "dataset") r.dataset = value;
            else if (key == "algorithm") r.algorithm = value;
            else if (key == "run") r.run = parse_unsigned(value, key);
            else if (key == "seed") r.seed = parse_unsigned(value, key);
            else if (key == "features") r.feature_count = parse_unsigned(value, key);
            else if (key == "evaluations") r.evaluations = parse_unsigned(value, key);
            continue;
        }
        const auto cells = detail::split_line(line, ',');
        if (cells.size() != 5) throw format_error(source + ": payload line " + std::to_string(line_no) + " needs 5 cells");
        FrontPoint p;
        p.objectives.error_rate = parse_real_strict(cells[1], "f1_error");
        p.objectives.size = parse_unsigned(cells[2], "f2_size");
        p.objectives.missing_pct = parse_real_strict(cells[3], "f3_missing_pct");
        p.mask = cells[4];
        if (cells[0] == "train") r.train_front.push_back(std::move(p));
        else if (cells[0] == "test") r.test_front.push_back(std::move(p));
        else throw format_error(source + ": unknown split '" + std::string(cells[0]) + "'");
    }
    if (!payload) throw format_error(source + ": missing payload header");
    if (r.dataset.empty() || r.algorithm.empty()) throw format_error(source + ": missing dataset or algorithm");
    return r;
}

inline std::string record_to_string(const RunRecord& r) {
    std::ostringstream s;
    write_record(s, r);
    return s.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw io_error("write failed for '" + path.string() + "'");
}

/// Read every record under `dir` (or `dir/records` when present), sorted by file name.
inline std::vector<RunRecord> load_records(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    auto root = dir;
    if (fs::is_directory(dir / "records")) root = dir / "records";
    if (!fs::is_directory(root)) throw io_error("'" + dir.string() + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<RunRecord> out;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) throw io_error("cannot read '" + f.string() + "'");
        out.push_back(read_record(in, f.string()));
    }
    return out;
}

// ---------------------------------------------------------------- running

/// Rank-1 members, one per distinct mask, sorted by (f1, f2, f3, mask).
inline std::vector<FrontPoint> extract_front(const Population& pop, const Evaluator& eval) {
    std::vector<FrontPoint> front;
    std::vector<std::string> seen;
    for (const auto& ind : pop) {
        if (ind.rank.value_or(0) != 1) continue;
        auto mask = eval.mask_of(ind.candidate).to_string();
        if (std::find(seen.begin(), seen.end(), mask) != seen.end()) continue;
        seen.push_back(mask);
        front.push_back({std::move(mask), ind.objectives});
    }
    std::sort(front.begin(), front.end(), front_point_less);
    return front;
}

/// One (dataset, algorithm, run) cell.
inline RunRecord run_single(const Dataset& ds, const std::string& dataset_name, const std::string& algorithm,
                            std::size_t run, const ExperimentConfig& cfg) {
    const auto& algo = find_algorithm(algorithm);
    const std::uint64_t seed = cfg.base_seed + run;
    const auto spl = split(ds, seed, cfg.train_fraction, cfg.folds);
    const auto engine = cfg.engine_for_seed(seed);
    const Evaluator eval(ds, spl, engine.eval);

    const auto start = std::chrono::steady_clock::now();
    const auto result = algo(eval, engine);
    RunRecord rec;
    rec.dataset = dataset_name;
    rec.algorithm = algorithm;
    rec.run = run;
    rec.seed = seed;
    rec.feature_count = ds.feature_count();
    rec.evaluations = result.evaluations;
    rec.train_front = extract_front(result.population, eval);
    for (const auto& p : rec.train_front) {
        rec.test_front.push_back({p.mask, eval.on_test(FeatureMask::from_string(p.mask))});
    }
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

inline void export_fronts(std::span<const RunRecord> records, const std::filesystem::path& out_dir);

/// Run every cell, write records, manifest, fronts and timings into cfg.output_dir.
/// A dataset that fails to load is reported on `log` and skipped.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    validate(cfg);
    for (const auto& a : cfg.algorithms) find_algorithm(a);

    const fs::path out(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(out / "records", ec);
    if (ec) throw io_error("cannot create '" + (out / "records").string() + "': " + ec.message());

    std::vector<RunRecord> records;
    std::ostringstream manifest;
    std::ostringstream timings;
    manifest << "dataset,algorithm,run,seed,evaluations,front_size,record\n";
    timings << "dataset,algorithm,run,wall_time_ms\n";

    for (const auto& entry : cfg.datasets) {
        Dataset ds;
        try {
            ds = load_dataset(entry.path, entry.load);
        } catch (const std::exception& e) {
            log << "skipping dataset '" << entry.name << "': " << e.what() << '\n';
            continue;
        }
        for (const auto& algorithm : cfg.algorithms) {
            for (std::size_t r = 0; r < cfg.runs; ++r) {
                auto rec = run_single(ds, entry.name, algorithm, r, cfg);
                write_text_file(out / "records" / rec.file_name(), record_to_string(rec));
                manifest << rec.dataset << ',' << rec.algorithm << ',' << rec.run << ',' << rec.seed << ','
                         << rec.evaluations << ',' << rec.train_front.size() << ",records/" << rec.file_name() << '\n';
                timings << rec.dataset << ',' << rec.algorithm << ',' << rec.run << ','
                        << format_real(rec.wall_time_ms) << '\n';
                log << entry.name << ' ' << algorithm << " run " << r << ": " << rec.train_front.size()
                    << " front points, " << rec.evaluations << " evaluations\n";
                records.push_back(std::move(rec));
            }
        }
    }
    write_text_file(out / "manifest.csv", manifest.str());
    write_text_file(out / "timings.csv", timings.str());
    if (!records.empty()) export_fronts(records, out / "fronts");
    return records;
}

// ---------------------------------------------------------------- summary

enum class Split { train, test };

inline const char* split_name(Split s) { return s == Split::train ? "train" : "test"; }

inline std::vector<Point3> scaled_points(std::span<const FrontPoint> front, std::size_t feature_count) {
    const auto hv = HvConfig::for_features(feature_count);
    std::vector<Point3> pts;
    pts.reserve(front.size());
    for (const auto& p : front) pts.push_back(hv.scale(p.objectives.values()));
    return pts;
}

struct SummaryRow {
    std::string dataset;
    std::string split;
    std::string metric;  // "IGD" or "HV"
    std::string algorithm;
    std::size_t runs = 0;
    double mean = 0.0;
    std::optional<double> sd;
    std::optional<char> mark;  // vs the reference algorithm; empty on the reference row
    std::vector<double> values;
};

struct SummaryTable {
    std::string reference_algorithm;
    std::vector<SummaryRow> rows;
    std::vector<std::string> notices;
};

/// IGD and HV per run and split on objectives scaled to [0,1] (f2 / n, f3 / 100);
/// IGD against the non-dominated union of every run of every algorithm on that dataset and split.
inline SummaryTable summarize(std::span<const RunRecord> records, const std::string& reference_algorithm) {
    SummaryTable table;
    table.reference_algorithm = reference_algorithm;
    if (records.empty()) throw contract_error("summarize: no records");

    std::vector<std::string> datasets;
    for (const auto& r : records) {
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) datasets.push_back(r.dataset);
    }
    std::sort(datasets.begin(), datasets.end());

    for (const auto& dataset : datasets) {
        std::vector<const RunRecord*> recs;
        std::vector<std::string> algos;
        for (const auto& r : records) {
            if (r.dataset != dataset) continue;
            recs.push_back(&r);
            if (std::find(algos.begin(), algos.end(), r.algorithm) == algos.end()) algos.push_back(r.algorithm);
        }
        std::sort(algos.begin(), algos.end());
        // reference algorithm first, the rest alphabetical
        if (auto it = std::find(algos.begin(), algos.end(), reference_algorithm); it != algos.end()) {
            std::rotate(algos.begin(), it, it + 1);
        } else {
            table.notices.push_back(dataset + ": reference algorithm '" + reference_algorithm +
                                    "' has no runs; significance marks omitted");
        }

        for (const auto split : {Split::train, Split::test}) {
            auto front_of = [split](const RunRecord& r) -> const std::vector<FrontPoint>& {
                return split == Split::train ? r.train_front : r.test_front;
            };
            std::vector<std::vector<Point3>> fronts;
            for (const auto* r : recs) {
                fronts.push_back(nondominated_unique(scaled_points(front_of(*r), r->feature_count)));
            }
            const auto ref_set = build_reference_set(fronts, "non-dominated union of all runs and algorithms");

            std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> samples;  // igd, hv
            for (std::size_t i = 0; i < recs.size(); ++i) {
                auto& [igd_values, hv_values] = samples[recs[i]->algorithm];
                if (fronts[i].empty()) {
                    table.notices.push_back(dataset + "/" + recs[i]->algorithm + " run " +
                                            std::to_string(recs[i]->run) + ": empty front skipped");
                    continue;
                }
                igd_values.push_back(igd(fronts[i], ref_set.points));
                hv_values.push_back(hypervolume_scaled(fronts[i], HvConfig{}.reference));
            }

            for (const std::string metric : {"IGD", "HV"}) {
                const auto orientation = metric == "IGD" ? Orientation::lower_is_better : Orientation::higher_is_better;
                const std::vector<double>* ref_values = nullptr;
                if (auto it = samples.find(reference_algorithm); it != samples.end()) {
                    ref_values = metric == "IGD" ? &it->second.first : &it->second.second;
                }
                for (const auto& algo : algos) {
                    const auto& vals = metric == "IGD" ? samples[algo].first : samples[algo].second;
                    if (vals.empty()) continue;
                    SummaryRow row;
                    row.dataset = dataset;
                    row.split = split_name(split);
                    row.metric = metric;
                    row.algorithm = algo;
                    row.runs = vals.size();
                    row.values = vals;
                    row.mean = mean_of(vals);
                    if (vals.size() >= 2) {
                        row.sd = stddev_of(vals);
                    } else {
                        table.notices.push_back(dataset + "/" + algo + "/" + row.split + "/" + metric +
                                                ": single run, SD and significance omitted");
                    }
                    if (algo != reference_algorithm && ref_values && ref_values->size() >= 2 && vals.size() >= 2) {
                        row.mark = welch_t_test(*ref_values, vals, orientation).verdict;
                    }
                    table.rows.push_back(std::move(row));
                }
            }
        }
    }
    return table;
}

inline std::string format_sci(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << std::uppercase << v;
    return s.str();
}

/// Aligned text table, one line per (dataset, split, metric, algorithm).
inline std::string summary_text(const SummaryTable& t) {
    std::vector<std::array<std::string, 8>> cells;
    cells.push_back({"dataset", "split", "metric", "algorithm", "runs", "MV", "SD", "T-sig"});
    for (const auto& r : t.rows) {
        cells.push_back({r.dataset, r.split, r.metric, r.algorithm, std::to_string(r.runs), format_sci(r.mean),
                         r.sd ? format_sci(*r.sd) : "-", r.mark ? std::string(1, *r.mark) : ""});
    }
    std::array<std::size_t, 8> width{};
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    out << "T-sig: '+' " << t.reference_algorithm << " significantly better, '-' significantly worse, "
        << "'=' no significant difference (Welch t-test, alpha 0.05)\n";
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::string cell = row[c];
            cell.resize(width[c], ' ');
            line += cell;
            if (c + 1 < row.size()) line += "  ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    for (const auto& n : t.notices) out << "note: " << n << '\n';
    return out.str();
}

inline std::string summary_csv(const SummaryTable& t) {
    std::ostringstream out;
    out << "dataset,split,metric,algorithm,runs,mean,sd,mark\n";
    for (const auto& r : t.rows) {
        out << r.dataset << ',' << r.split << ',' << r.metric << ',' << r.algorithm << ',' << r.runs << ','
            << format_real(r.mean) << ',' << (r.sd ? format_real(*r.sd) : "") << ','
            << (r.mark ? std::string(1, *r.mark) : "") << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------- export

/// Non-dominated union of one split's fronts without exact duplicates, sorted by (f1, f2, f3, mask).
inline std::vector<FrontPoint> merged_front(std::span<const RunRecord* const> records, Split split) {
    std::vector<FrontPoint> all;
    for (const auto* r : records) {
        const auto& f = split == Split::train ? r->train_front : r->test_front;
        all.insert(all.end(), f.begin(), f.end());
    }
    std::sort(all.begin(), all.end(), front_point_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<FrontPoint> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
            dominated = dominates(all[j].objectives, all[i].objectives);
        }
        if (!dominated) out.push_back(all[i]);
    }
    return out;
}

inline void export_fronts(std::span<const RunRecord> records, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    if (records.empty()) throw contract_error("export_fronts: no records");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw io_error("cannot create '" + out_dir.string() + "'");

    std::map<std::string, std::map<std::string, std::vector<const RunRecord*>>> grouped;
    for (const auto& r : records) grouped[r.dataset][r.algorithm].push_back(&r);

    for (const auto& [dataset, by_algo] : grouped) {
        for (const auto split : {Split::train, Split::test}) {
            std::ostringstream combined;
            combined << "algorithm," << kFrontHeader << '\n';
            for (const auto& [algo, recs] : by_algo) {
                const auto front = merged_front(recs, split);
                std::ostringstream single;
                single << kFrontHeader << '\n';
                for (const auto& p : front) {
                    single << format_point(p.objectives, p.mask) << '\n';
                    combined << algo << ',' << format_point(p.objectives, p.mask) << '\n';
                }
                write_text_file(out_dir / (dataset + "__" + algo + "__" + split_name(split) + ".csv"), single.str());
            }
            write_text_file(out_dir / (dataset + "__" + split_name(split) + "__all.csv"), combined.str());
        }
    }
}

}  // namespace fsmiss

#endif  // FSMISS_EXPERIMENT_HPP
