#ifndef FSMISS_DATASET_HPP
#define FSMISS_DATASET_HPP

/*
 Incomplete tabular datasets.

 Pipeline: load_csv -> normalize -> impute_mean -> split.

 Cells equal to the missing token are kept as empty optionals until imputation.
 Normalization is min-max over the observed values of each column; imputation
 replaces every missing cell with the mean of the observed (normalized) values
 of its column. The missing-value profile is taken before imputation and is
 what the third objective is computed from.

 Normalization and imputation run on the whole table before the train/test
 split, so the test partition contributes to the column statistics.
*/

#include "fsmiss/error.hpp"
#include "fsmiss/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace fsmiss {

enum class LabelPosition { first, last };

struct LoadOptions {
    std::string missing_token = "?";
    LabelPosition label_position = LabelPosition::last;
    bool skip_header = false;
    char delimiter = ',';
};

/// Parsed CSV: feature cells (possibly missing) plus dense class ids.
struct RawTable {
    std::vector<std::vector<std::optional<double>>> cells;  // N rows x n features
    std::vector<int> labels;                                // N class ids
    std::vector<std::string> label_names;                   // id -> original token
    std::size_t feature_count = 0;
    std::string source_name;

    std::size_t instance_count() const noexcept { return cells.size(); }
    std::size_t column_count() const noexcept { return feature_count + 1; }
    std::size_t class_count() const noexcept { return label_names.size(); }
};

struct MissingProfile {
    std::vector<std::size_t> per_feature_missing;  // lm_j
    std::size_t total_missing = 0;                 // la
    std::size_t instance_count = 0;
    double missing_rate_pct = 0.0;                 // 100 la / (N n)

    std::size_t feature_count() const noexcept { return per_feature_missing.size(); }

    /// Missing rate with the (never missing) label column counted in the denominator.
    double missing_rate_all_columns_pct() const noexcept {
        const auto cells = instance_count * (feature_count() + 1);
        return cells == 0 ? 0.0 : 100.0 * static_cast<double>(total_missing) / static_cast<double>(cells);
    }
};

/// Complete, normalized dataset. Immutable once built.
class Dataset {
 public:
    Dataset() = default;

    Dataset(std::string name, std::size_t instances, std::size_t features, std::vector<double> matrix,
            std::vector<int> labels, std::vector<std::uint8_t> missing_mask, std::vector<std::string> label_names)
        : name_(std::move(name)),
          instances_(instances),
          features_(features),
          matrix_(std::move(matrix)),
          labels_(std::move(labels)),
          missing_mask_(std::move(missing_mask)),
          label_names_(std::move(label_names)) {
        if (matrix_.size() != instances_ * features_ || labels_.size() != instances_ ||
            missing_mask_.size() != matrix_.size()) {
            throw contract_error("Dataset: inconsistent matrix/label/mask sizes");
        }
        int max_label = -1;
        for (int l : labels_) {
            if (l < 0) throw contract_error("Dataset: negative class id");
            max_label = std::max(max_label, l);
        }
        class_count_ = static_cast<std::size_t>(max_label + 1);
        if (label_names_.empty()) {
            for (std::size_t c = 0; c < class_count_; ++c) label_names_.push_back(std::to_string(c));
        }
        class_count_ = std::max(class_count_, label_names_.size());
        profile_.per_feature_missing.assign(features_, 0);
        profile_.instance_count = instances_;
        for (std::size_t i = 0; i < instances_; ++i) {
            for (std::size_t j = 0; j < features_; ++j) {
                if (missing_mask_[i * features_ + j]) ++profile_.per_feature_missing[j];
            }
        }
        for (auto m : profile_.per_feature_missing) profile_.total_missing += m;
        const auto cells = instances_ * features_;
        profile_.missing_rate_pct =
            cells == 0 ? 0.0 : 100.0 * static_cast<double>(profile_.total_missing) / static_cast<double>(cells);
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t instance_count() const noexcept { return instances_; }
    std::size_t feature_count() const noexcept { return features_; }
    std::size_t class_count() const noexcept { return class_count_; }

    double at(std::size_t row, std::size_t feature) const noexcept { return matrix_[row * features_ + feature]; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {matrix_.data() + i * features_, features_};
    }
    std::span<const double> matrix() const noexcept { return matrix_; }
    int label(std::size_t i) const noexcept { return labels_[i]; }
    std::span<const int> labels() const noexcept { return labels_; }
    bool was_missing(std::size_t row, std::size_t feature) const noexcept {
        return missing_mask_[row * features_ + feature] != 0;
    }
    std::span<const std::uint8_t> missing_mask() const noexcept { return missing_mask_; }
    const MissingProfile& profile() const noexcept { return profile_; }
    const std::vector<std::string>& label_names() const noexcept { return label_names_; }

 private:
    std::string name_;
    std::size_t instances_ = 0;
    std::size_t features_ = 0;
    std::size_t class_count_ = 0;
    std::vector<double> matrix_;
    std::vector<int> labels_;
    std::vector<std::uint8_t> missing_mask_;
    std::vector<std::string> label_names_;
    MissingProfile profile_;
};

/// Train/test partition plus a fold id for every training instance.
struct SplitSpec {
    std::vector<std::size_t> train_indices;  // ascending
    std::vector<std::size_t> test_indices;   // ascending
    std::vector<std::size_t> fold_of;        // parallel to train_indices
    std::size_t folds = 0;

    bool operator==(const SplitSpec&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_line(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

inline std::optional<double> parse_real(std::string_view token) noexcept {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty() || !std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace detail

/// Parse CSV text. Blank lines are skipped; row numbers in errors are 1-based file lines.
inline RawTable parse_csv(std::istream& in, const LoadOptions& opts = {}, std::string source_name = "<stream>") {
    RawTable table;
    table.source_name = std::move(source_name);
    std::map<std::string, int, std::less<>> label_ids;
    std::string line;
    std::size_t line_no = 0;
    std::size_t expected_cells = 0;
    bool header_pending = opts.skip_header;

    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto cells = detail::split_line(line, opts.delimiter);
        if (expected_cells == 0) {
            if (cells.size() < 2) {
                throw format_error(table.source_name + ": row " + std::to_string(line_no) +
                                   " has fewer than two cells (need at least one feature and a label)");
            }
            expected_cells = cells.size();
            table.feature_count = expected_cells - 1;
        } else if (cells.size() != expected_cells) {
            throw format_error(table.source_name + ": row " + std::to_string(line_no) + " has " +
                               std::to_string(cells.size()) + " cells, expected " + std::to_string(expected_cells));
        }

        const std::size_t label_col = opts.label_position == LabelPosition::last ? expected_cells - 1 : 0;
        const auto label_token = cells[label_col];
        if (label_token.empty() || label_token == opts.missing_token) {
            throw data_error(table.source_name + ": row " + std::to_string(line_no) + " has a missing class label");
        }
        auto it = label_ids.find(label_token);
        if (it == label_ids.end()) {
            it = label_ids.emplace(std::string(label_token), static_cast<int>(table.label_names.size())).first;
            table.label_names.emplace_back(label_token);
        }
        table.labels.push_back(it->second);

        std::vector<std::optional<double>> row;
        row.reserve(table.feature_count);
        for (std::size_t c = 0; c < expected_cells; ++c) {
            if (c == label_col) continue;
            const auto token = cells[c];
            if (token == opts.missing_token) {
                row.emplace_back(std::nullopt);
                continue;
            }
            const auto value = detail::parse_real(token);
            if (!value) {
                throw parse_error(table.source_name + ": row " + std::to_string(line_no) + ", column " +
                                  std::to_string(c + 1) + ": cannot parse '" + std::string(token) + "' as a number");
            }
            row.emplace_back(*value);
        }
        table.cells.push_back(std::move(row));
    }
    if (table.cells.empty()) throw format_error(table.source_name + ": no data rows");
    return table;
}

inline RawTable load_csv(const std::string& path, const LoadOptions& opts = {}) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open dataset file '" + path + "'");
    auto name = path;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
    return parse_csv(in, opts, name);
}

/// Min-max scale every feature column to [0, 1] over its observed values.
inline RawTable normalize(RawTable table) {
    for (std::size_t j = 0; j < table.feature_count; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& row : table.cells) {
            if (row[j]) {
                lo = std::min(lo, *row[j]);
                hi = std::max(hi, *row[j]);
            }
        }
        if (lo > hi) {
            throw data_error(table.source_name + ": feature column " + std::to_string(j + 1) +
                             " has no observed values");
        }
        const double range = hi - lo;
        for (auto& row : table.cells) {
            if (!row[j]) continue;
            row[j] = range > 0.0 ? (*row[j] - lo) / range : 0.0;
        }
    }
    return table;
}

/// Replace missing cells with their column mean. Expects a normalized table.
inline Dataset impute_mean(const RawTable& table) {
    const auto n_rows = table.instance_count();
    const auto n_feat = table.feature_count;
    std::vector<double> matrix(n_rows * n_feat, 0.0);
    std::vector<std::uint8_t> mask(n_rows * n_feat, 0);

    for (std::size_t j = 0; j < n_feat; ++j) {
        double sum = 0.0;
        std::size_t missing = 0;
        for (const auto& row : table.cells) {
            if (row.size() != n_feat) throw contract_error("impute_mean: ragged table");
            if (!row[j]) {
                ++missing;
                continue;
            }
            if (*row[j] < 0.0 || *row[j] > 1.0) {
                throw contract_error("impute_mean: table is not normalized (column " + std::to_string(j + 1) + ")");
            }
            sum += *row[j];
        }
        if (missing == n_rows) {
            throw data_error(table.source_name + ": feature column " + std::to_string(j + 1) +
                             " has no observed values");
        }
        const double mean = sum / static_cast<double>(n_rows - missing);
        for (std::size_t i = 0; i < n_rows; ++i) {
            const auto& cell = table.cells[i][j];
            matrix[i * n_feat + j] = cell ? *cell : mean;
            mask[i * n_feat + j] = cell ? 0 : 1;
        }
    }
    return Dataset(table.source_name, n_rows, n_feat, std::move(matrix), table.labels, std::move(mask),
                   table.label_names);
}

/// load_csv + normalize + impute_mean.
inline Dataset load_dataset(const std::string& path, const LoadOptions& opts = {}) {
    return impute_mean(normalize(load_csv(path, opts)));
}

/// floor(x + 1/2) with a small guard against representation error just below the half.
inline std::size_t round_half_up(double x) noexcept {
    return static_cast<std::size_t>(std::floor(x + 0.5 + 1e-9));
}

/// Seeded train/test split with class-stratified fold assignment on the training part.
///
/// Instances are shuffled with the pinned generator; the first round(fraction * N)
/// become the training set. Training instances are then grouped by class (in
/// shuffled order) and dealt to folds round-robin, which stratifies where class
/// counts allow and keeps fold sizes within one of each other.
inline SplitSpec split(const Dataset& ds, std::uint64_t seed, double train_fraction, std::size_t folds) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw config_error("split: train fraction must lie in (0, 1)");
    }
    if (folds < 2) throw config_error("split: need at least two folds");
    const auto n = ds.instance_count();
    const auto n_train = round_half_up(train_fraction * static_cast<double>(n));
    if (n_train < folds) {
        throw config_error("split: " + std::to_string(n_train) + " training instances cannot fill " +
                           std::to_string(folds) + " folds");
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    auto rng = make_rng(seed);
    rng.shuffle(order.begin(), order.end());

    SplitSpec spec;
    spec.folds = folds;
    spec.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    spec.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());

    std::vector<std::size_t> fold_by_instance(n, 0);
    std::size_t dealt = 0;
    for (std::size_t c = 0; c < ds.class_count(); ++c) {
        for (auto idx : spec.train_indices) {
            if (static_cast<std::size_t>(ds.label(idx)) == c) fold_by_instance[idx] = dealt++ % folds;
        }
    }

    std::sort(spec.train_indices.begin(), spec.train_indices.end());
    std::sort(spec.test_indices.begin(), spec.test_indices.end());
    spec.fold_of.reserve(n_train);
    for (auto idx : spec.train_indices) spec.fold_of.push_back(fold_by_instance[idx]);
    return spec;
}

/// Plain-text profile: sizes, class count, per-feature missing counts and rates.
inline std::string profile_report(const Dataset& ds) {
    const auto& p = ds.profile();
    std::ostringstream out;
    out << "dataset: " << ds.name() << '\n'
        << "instances: " << ds.instance_count() << '\n'
        << "columns: " << ds.feature_count() + 1 << '\n'
        << "features: " << ds.feature_count() << '\n'
        << "classes: " << ds.class_count() << '\n'
        << "missing_total: " << p.total_missing << '\n'
        << std::fixed << std::setprecision(2)
        << "missing_rate_features_pct: " << p.missing_rate_pct << '\n'
        << "missing_rate_columns_pct: " << p.missing_rate_all_columns_pct() << '\n'
        << "missing_per_feature:";
    for (auto m : p.per_feature_missing) out << ' ' << m;
    out << '\n';
    return out.str();
}

}  // namespace fsmiss

#endif  // FSMISS_DATASET_HPP
