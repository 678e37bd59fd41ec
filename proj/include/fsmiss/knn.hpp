#ifndef FSMISS_KNN_HPP
#define FSMISS_KNN_HPP

/*
 Brute-force K-nearest-neighbour classification.

 Distance is squared Euclidean over the selected columns (same ordering as
 Euclidean). Neighbour ties go to the lower training position, vote ties to
 the lower class id, so predictions are fully deterministic.
*/

#include "fsmiss/dataset.hpp"
#include "fsmiss/error.hpp"
#include "fsmiss/feature_mask.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fsmiss {

struct KnnConfig {
    std::size_t k = 5;
    std::size_t folds = 10;
};

struct AccuracyResult {
    double mean_accuracy = 0.0;
    std::vector<double> per_fold;
};

namespace detail {

/// Majority class among the k smallest (distance, position) pairs. Reorders `cand`.
inline int vote(std::vector<std::pair<double, std::size_t>>& cand, std::size_t k,
                std::span<const int> labels_by_position, std::vector<std::size_t>& counts) {
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const auto label = static_cast<std::size_t>(labels_by_position[cand[i].second]);
        if (label >= counts.size()) counts.resize(label + 1, 0);
        ++counts[label];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
        if (counts[c] > counts[best]) best = c;
    }
    return static_cast<int>(best);
}

/// Classify dataset rows `queries` against dataset rows `train` on `columns`; returns #correct.
inline std::size_t count_correct(const Dataset& ds, std::span<const std::size_t> train,
                                 std::span<const std::size_t> queries, std::span<const std::size_t> columns,
                                 std::size_t k) {
    std::vector<int> train_labels(train.size());
    for (std::size_t t = 0; t < train.size(); ++t) train_labels[t] = ds.label(train[t]);
    std::vector<std::pair<double, std::size_t>> cand(train.size());
    std::vector<std::size_t> counts(ds.class_count(), 0);
    std::size_t correct = 0;
    for (auto q : queries) {
        const auto qrow = ds.row(q);
        for (std::size_t t = 0; t < train.size(); ++t) {
            const auto trow = ds.row(train[t]);
            double d = 0.0;
            for (auto c : columns) {
                const double diff = qrow[c] - trow[c];
                d += diff * diff;
            }
            cand[t] = {d, t};
        }
        if (vote(cand, k, train_labels, counts) == ds.label(q)) ++correct;
    }
    return correct;
}

}  // namespace detail

/// Predict the class of `query` from explicit training rows.
inline int knn_predict(std::span<const std::vector<double>> train_rows, std::span<const int> train_labels,
                       std::span<const double> query, std::size_t k) {
    if (train_rows.empty()) throw evaluation_error("knn_predict: empty training set");
    if (train_labels.size() != train_rows.size()) throw contract_error("knn_predict: label count mismatch");
    if (k == 0 || k > train_rows.size()) {
        throw config_error("knn_predict: k=" + std::to_string(k) + " outside [1, " +
                           std::to_string(train_rows.size()) + "]");
    }
    std::vector<std::pair<double, std::size_t>> cand(train_rows.size());
    for (std::size_t t = 0; t < train_rows.size(); ++t) {
        if (train_rows[t].size() != query.size()) throw contract_error("knn_predict: dimension mismatch");
        double d = 0.0;
        for (std::size_t c = 0; c < query.size(); ++c) {
            const double diff = query[c] - train_rows[t][c];
            d += diff * diff;
        }
        cand[t] = {d, t};
    }
    std::vector<std::size_t> counts;
    return detail::vote(cand, k, train_labels, counts);
}

/// l-fold cross-validated accuracy over `rows` (fold_of parallel to rows), mean of per-fold accuracies.
inline AccuracyResult cross_validated_accuracy(const Dataset& ds, std::span<const std::size_t> rows,
                                               std::span<const std::size_t> fold_of, const FeatureMask& mask,
                                               const KnnConfig& cfg) {
    if (cfg.k < 1) throw config_error("k must be at least 1");
    if (cfg.folds < 2) throw config_error("cross-validation needs at least two folds");
    if (mask.size() != ds.feature_count()) throw contract_error("feature mask length does not match dataset");
    const auto columns = mask.selected_indices();
    if (columns.empty()) throw contract_error("cross_validated_accuracy: mask selects no features");
    if (fold_of.size() != rows.size()) throw contract_error("fold assignment length does not match rows");

    std::vector<std::vector<std::size_t>> members(cfg.folds);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (fold_of[i] >= cfg.folds) throw contract_error("fold id out of range");
        members[fold_of[i]].push_back(rows[i]);
    }
    for (std::size_t f = 0; f < cfg.folds; ++f) {
        if (members[f].empty()) throw config_error("fold " + std::to_string(f) + " is empty");
        const auto train_size = rows.size() - members[f].size();
        if (cfg.k > train_size) {
            throw config_error("k=" + std::to_string(cfg.k) + " exceeds the " + std::to_string(train_size) +
                               " training rows available to fold " + std::to_string(f));
        }
    }

    AccuracyResult result;
    result.per_fold.reserve(cfg.folds);
    std::vector<std::size_t> train;
    for (std::size_t f = 0; f < cfg.folds; ++f) {
        train.clear();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (fold_of[i] != f) train.push_back(rows[i]);
        }
        const auto correct = detail::count_correct(ds, train, members[f], columns, cfg.k);
        result.per_fold.push_back(static_cast<double>(correct) / static_cast<double>(members[f].size()));
    }
    result.mean_accuracy =
        std::accumulate(result.per_fold.begin(), result.per_fold.end(), 0.0) / static_cast<double>(cfg.folds);
    return result;
}

/// Accuracy of classifying every `test` row with K-NN over all `train` rows.
inline double holdout_accuracy(const Dataset& ds, std::span<const std::size_t> train,
                               std::span<const std::size_t> test, const FeatureMask& mask, std::size_t k) {
    if (test.empty()) throw contract_error("holdout_accuracy: empty test partition");
    if (train.empty()) throw evaluation_error("holdout_accuracy: empty training partition");
    if (k < 1 || k > train.size()) throw config_error("holdout_accuracy: k exceeds training partition size");
    if (mask.size() != ds.feature_count()) throw contract_error("feature mask length does not match dataset");
    const auto columns = mask.selected_indices();
    if (columns.empty()) throw contract_error("holdout_accuracy: mask selects no features");
    const auto correct = detail::count_correct(ds, train, test, columns, k);
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace fsmiss

#endif  // FSMISS_KNN_HPP
