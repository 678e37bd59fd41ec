#include "fsmiss/experiment.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace {

using namespace fsmiss;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("fsmiss_test_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::string kHepatitis = std::string(FSMISS_DATA_DIR) + "/hepatitis.data";

TEST(FormatReal, ShortestRoundTripWithDecimalPoint) {
    EXPECT_EQ(format_real(0.2), "0.2");
    EXPECT_EQ(format_real(3.0), "3.0");
    EXPECT_EQ(format_real(10.0), "10.0");
    EXPECT_EQ(format_real(0.0), "0.0");
    EXPECT_EQ(format_real(1.0 / 3.0), "0.3333333333333333");
    std::mt19937_64 gen(1);
    for (int i = 0; i < 10000; ++i) {
        const double x = std::bit_cast<double>(gen() & 0x7fefffffffffffffULL);
        ASSERT_EQ(std::bit_cast<std::uint64_t>(parse_real_strict(format_real(x), "x")),
                  std::bit_cast<std::uint64_t>(x));
    }
}

TEST(Config, ParsesKeysCommentsAndDatasetOptions) {
    std::istringstream in(
        "# comment\n"
        "dataset = hep, data/hepatitis.data, label=first, missing=NA\n"
        "dataset = other, /abs/x.csv, header\n"
        "algorithms = nsga3, nsga2, random\n"
        "runs = 3   \n"
        "nfe = 500\n"
        "pop = 20\n"
        "theta = 0.5\n"
        "\n"
        "seed = 42\n"
        "output = out\n");
    const auto cfg = parse_config(in, "/base");
    ASSERT_EQ(cfg.datasets.size(), 2u);
    EXPECT_EQ(cfg.datasets[0].name, "hep");
    EXPECT_EQ(cfg.datasets[0].path, "/base/data/hepatitis.data");
    EXPECT_EQ(cfg.datasets[0].load.label_position, LabelPosition::first);
    EXPECT_EQ(cfg.datasets[0].load.missing_token, "NA");
    EXPECT_EQ(cfg.datasets[1].path, "/abs/x.csv");
    EXPECT_TRUE(cfg.datasets[1].load.skip_header);
    EXPECT_EQ(cfg.algorithms, (std::vector<std::string>{"nsga3", "nsga2", "random"}));
    EXPECT_EQ(cfg.runs, 3u);
    EXPECT_EQ(cfg.max_evaluations, 500u);
    EXPECT_EQ(cfg.population_size, 20u);
    EXPECT_EQ(cfg.threshold, 0.5);
    EXPECT_EQ(cfg.base_seed, 42u);
    EXPECT_EQ(cfg.output_dir, "/base/out");
    EXPECT_EQ(cfg.k, 5u);
    EXPECT_EQ(cfg.folds, 10u);
}

TEST(Config, DefaultsMatchTheExperimentalProtocol) {
    const ExperimentConfig cfg;
    EXPECT_EQ(cfg.runs, 30u);
    EXPECT_EQ(cfg.max_evaluations, 100000u);
    EXPECT_EQ(cfg.population_size, 100u);
    EXPECT_EQ(cfg.threshold, 0.6);
    EXPECT_EQ(cfg.train_fraction, 0.7);
    EXPECT_EQ(cfg.divisions, 13u);
    const auto e = cfg.engine_for_seed(5);
    EXPECT_EQ(e.variation.crossover_probability, 1.0);
    EXPECT_EQ(e.variation.crossover_index, 30.0);
    EXPECT_EQ(e.variation.mutation_index, 20.0);
    EXPECT_EQ(e.variation.mutation_rate_for(19), 1.0 / 19.0);
    EXPECT_EQ(e.seed, 5u);
}

TEST(Config, ErrorsAndOverrides) {
    ExperimentConfig cfg;
    EXPECT_THROW(apply_setting(cfg, "bogus", "1"), config_error);
    EXPECT_THROW(apply_setting(cfg, "runs", "three"), parse_error);
    EXPECT_THROW(apply_setting(cfg, "theta", "abc"), parse_error);
    EXPECT_THROW(apply_setting(cfg, "dataset", "justname"), config_error);
    EXPECT_THROW(apply_setting(cfg, "dataset", "a, b, label=middle"), config_error);
    apply_setting(cfg, "nfe", "50");
    apply_setting(cfg, "pop", "100");
    apply_setting(cfg, "dataset", "x, y.csv");
    EXPECT_THROW(validate(cfg), config_error);  // budget below one population
    apply_setting(cfg, "nfe", "200");
    EXPECT_NO_THROW(validate(cfg));
    std::istringstream bad("runs\n");
    EXPECT_THROW(parse_config(bad), config_error);
    EXPECT_THROW(find_algorithm("nsga4"), config_error);
}

RunRecord sample_record() {
    RunRecord r;
    r.dataset = "toy";
    r.algorithm = "nsga3";
    r.run = 4;
    r.seed = 5;
    r.feature_count = 4;
    r.evaluations = 400;
    r.train_front = {{"1000", {0.1, 1, 0.0}}, {"0110", {1.0 / 3.0, 2, 37.5}}};
    r.test_front = {{"1000", {0.2, 1, 0.0}}, {"0110", {0.25, 2, 37.5}}};
    return r;
}

TEST(Record, RoundTripIsExact) {
    const auto r = sample_record();
    const auto text = record_to_string(r);
    EXPECT_NE(text.find("train,0.1,1,0.0,1000\n"), std::string::npos);
    EXPECT_NE(text.find("train,0.3333333333333333,2,37.5,0110\n"), std::string::npos);
    std::istringstream in(text);
    const auto back = read_record(in);
    EXPECT_EQ(back, r);
    EXPECT_EQ(record_to_string(back), text);
    EXPECT_EQ(r.file_name(), "toy__nsga3__run004.txt");
}

TEST(Record, MalformedInputIsFormatError) {
    std::istringstream no_payload("dataset=x\nalgorithm=y\n");
    EXPECT_THROW(read_record(no_payload), format_error);
    std::istringstream bad_split("dataset=x\nalgorithm=y\nsplit,f1_error,f2_size,f3_missing_pct,mask\nval,0,1,0,1\n");
    EXPECT_THROW(read_record(bad_split), format_error);
}

ExperimentConfig small_config(const fs::path& out) {
    ExperimentConfig cfg;
    apply_setting(cfg, "dataset", "hepatitis, " + kHepatitis + ", label=first");
    cfg.runs = 2;
    cfg.max_evaluations = 24;
    cfg.population_size = 8;
    cfg.divisions = 4;
    cfg.output_dir = out.string();
    return cfg;
}

TEST(RunSingle, AlgorithmsShareSplitAndEvaluation) {
    LoadOptions opts;
    opts.label_position = LabelPosition::first;
    const auto ds = load_dataset(kHepatitis, opts);
    const auto cfg = small_config(scratch_dir("share"));
    const auto a = run_single(ds, "hepatitis", "nsga3", 1, cfg);
    const auto b = run_single(ds, "hepatitis", "nsga2", 1, cfg);
    EXPECT_EQ(a.seed, 2u);
    EXPECT_EQ(a.evaluations, 24u);
    ASSERT_FALSE(a.train_front.empty());
    ASSERT_EQ(a.train_front.size(), a.test_front.size());
    // with the same split, a mask found by both algorithms has the same objectives
    const auto spl = split(ds, a.seed, cfg.train_fraction, cfg.folds);
    const Evaluator eval(ds, spl, cfg.engine_for_seed(a.seed).eval);
    for (const auto* rec : {&a, &b}) {
        for (std::size_t i = 0; i < rec->train_front.size(); ++i) {
            const auto mask = FeatureMask::from_string(rec->train_front[i].mask);
            EXPECT_EQ(rec->train_front[i].objectives, eval.of_mask(mask));
            EXPECT_EQ(rec->test_front[i].objectives, eval.on_test(mask));
        }
    }
    for (std::size_t i = 1; i < a.train_front.size(); ++i) {
        EXPECT_FALSE(front_point_less(a.train_front[i], a.train_front[i - 1]));
    }
}

TEST(RunExperiment, WritesRecordsAndIsReproducible) {
    const auto d1 = scratch_dir("rep1");
    const auto d2 = scratch_dir("rep2");
    std::ostringstream log;
    const auto r1 = run_experiment(small_config(d1), log);
    const auto r2 = run_experiment(small_config(d2), log);
    ASSERT_EQ(r1.size(), 4u);
    EXPECT_EQ(r1, r2);
    for (const auto& r : r1) {
        EXPECT_EQ(slurp(d1 / "records" / r.file_name()), slurp(d2 / "records" / r.file_name()));
    }
    EXPECT_EQ(slurp(d1 / "manifest.csv"), slurp(d2 / "manifest.csv"));
    for (const auto& entry : fs::directory_iterator(d1 / "fronts")) {
        EXPECT_EQ(slurp(entry.path()), slurp(d2 / "fronts" / entry.path().filename()));
    }
    const auto loaded = load_records(d1);
    EXPECT_EQ(loaded.size(), 4u);
    EXPECT_TRUE(fs::exists(d1 / "fronts" / "hepatitis__nsga3__train.csv"));
    EXPECT_TRUE(fs::exists(d1 / "fronts" / "hepatitis__test__all.csv"));
}

TEST(RunExperiment, UnreadableDatasetIsSkipped) {
    auto cfg = small_config(scratch_dir("skip"));
    apply_setting(cfg, "dataset", "ghost, /no/such/file.csv");
    std::ostringstream log;
    const auto recs = run_experiment(cfg, log);
    EXPECT_EQ(recs.size(), 4u);
    EXPECT_NE(log.str().find("skipping dataset 'ghost'"), std::string::npos);
}

RunRecord synthetic(const std::string& algo, std::size_t run, double shift) {
    RunRecord r;
    r.dataset = "d";
    r.algorithm = algo;
    r.run = run;
    r.feature_count = 10;
    const double jitter = 0.01 * static_cast<double>(run);
    r.train_front = {{"1000000000", {0.1 + shift + jitter, 1, 10.0}},
                     {"1100000000", {0.05 + shift + jitter, 2, 20.0}}};
    r.test_front = r.train_front;
    return r;
}

TEST(Summarize, RecomputesMeanSdAndMarks) {
    std::vector<RunRecord> recs;
    for (std::size_t i = 0; i < 5; ++i) {
        recs.push_back(synthetic("nsga3", i, 0.0));
        recs.push_back(synthetic("nsga2", i, 0.3));
    }
    const auto table = summarize(recs, "nsga3");
    // independent recomputation of one HV cell
    std::vector<double> hv2;
    for (std::size_t i = 0; i < 5; ++i) {
        const double j = 0.01 * static_cast<double>(i);
        const std::vector<Point3> pts{{0.4 + j, 0.1, 0.1}, {0.35 + j, 0.2, 0.2}};
        hv2.push_back(hypervolume_scaled(pts, {1.1, 1.1, 1.1}));
    }
    bool saw = false;
    for (const auto& row : table.rows) {
        EXPECT_EQ(row.runs, 5u);
        if (row.algorithm == "nsga3") {
            EXPECT_FALSE(row.mark.has_value());
            continue;
        }
        ASSERT_TRUE(row.mark.has_value());
        EXPECT_EQ(*row.mark, '+');  // reference significantly better on both metrics
        if (row.metric == "HV" && row.split == "train") {
            saw = true;
            EXPECT_NEAR(row.mean, mean_of(hv2), 1e-12);
            EXPECT_NEAR(*row.sd, stddev_of(hv2), 1e-12);
        }
    }
    EXPECT_TRUE(saw);
    EXPECT_EQ(table.rows.size(), 8u);
    EXPECT_EQ(table.rows.front().algorithm, "nsga3");
    const auto csv = summary_csv(table);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "dataset,split,metric,algorithm,runs,mean,sd,mark");
    EXPECT_NE(summary_text(table).find("T-sig"), std::string::npos);
}

TEST(Summarize, SingleRunHasNoSdAndANotice) {
    const std::vector<RunRecord> recs{synthetic("nsga3", 0, 0.0), synthetic("nsga2", 0, 0.1)};
    const auto table = summarize(recs, "nsga3");
    for (const auto& row : table.rows) {
        EXPECT_FALSE(row.sd.has_value());
        EXPECT_FALSE(row.mark.has_value());
    }
    EXPECT_FALSE(table.notices.empty());
}

TEST(Export, MergedFrontsSortedNondominatedAndDeterministic) {
    std::vector<RunRecord> recs{synthetic("nsga3", 0, 0.0), synthetic("nsga3", 1, 0.0), synthetic("nsga2", 0, 0.2)};
    const auto d1 = scratch_dir("exp1");
    const auto d2 = scratch_dir("exp2");
    export_fronts(recs, d1);
    export_fronts(recs, d2);
    const auto text = slurp(d1 / "d__nsga3__train.csv");
    EXPECT_EQ(text, "f1_error,f2_size,f3_missing_pct,mask\n0.05,2,20.0,1100000000\n0.1,1,10.0,1000000000\n");
    for (const auto& e : fs::directory_iterator(d1)) EXPECT_EQ(slurp(e.path()), slurp(d2 / e.path().filename()));
    const auto all = slurp(d1 / "d__train__all.csv");
    EXPECT_EQ(all.substr(0, all.find('\n')), "algorithm,f1_error,f2_size,f3_missing_pct,mask");
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FSMISS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
    EXPECT_NE(run_cli(""), 0);
    EXPECT_NE(run_cli("frobnicate"), 0);
    EXPECT_EQ(run_cli("run /no/such/config.txt"), 1);
    EXPECT_EQ(run_cli("summarize " + scratch_dir("empty").string()), 1);
    EXPECT_EQ(run_cli("profile " + kHepatitis + " --label first"), 0);
    EXPECT_EQ(run_cli("profile " + kHepatitis + " --label middle"), 1);
}

TEST(Cli, RunSummarizeExport) {
    const auto dir = scratch_dir("cli");
    std::ofstream(dir / "exp.cfg") << "dataset = hepatitis, " << kHepatitis << ", label=first\n"
                                   << "runs = 2\nnfe = 16\npop = 8\ndivisions = 4\noutput = out\n";
    ASSERT_EQ(run_cli("run " + (dir / "exp.cfg").string() + " --algo nsga3,random"), 0);
    EXPECT_EQ(load_records(dir / "out").size(), 4u);
    ASSERT_EQ(run_cli("summarize " + (dir / "out").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "out" / "summary.csv"));
    ASSERT_EQ(run_cli("export " + (dir / "out").string() + " --out " + (dir / "plots").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "plots" / "hepatitis__random__test.csv"));
}

}  // namespace
