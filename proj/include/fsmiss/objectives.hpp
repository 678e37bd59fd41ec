#ifndef FSMISS_OBJECTIVES_HPP
#define FSMISS_OBJECTIVES_HPP

/*
 Three-objective feature-selection problem.

 A candidate is a real vector in [0,1]^n. Feature j is selected when
 x_j >= theta. An empty selection is repaired by switching on the feature with
 the largest x_j (lowest index on ties). Objectives, all minimized:

   f1  1 - cross-validated K-NN accuracy on the training partition
   f2  number of selected features
   f3  100 * (missing cells inside the selected columns) / (all missing cells),
       defined as 0 for a dataset without missing cells
*/

#include "fsmiss/dataset.hpp"
#include "fsmiss/error.hpp"
#include "fsmiss/feature_mask.hpp"
#include "fsmiss/knn.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <cstddef>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace fsmiss {

struct Candidate {
    std::vector<double> position;

    std::size_t size() const noexcept { return position.size(); }
    bool operator==(const Candidate&) const = default;
};

struct EvalConfig {
    double threshold = 0.6;
    KnnConfig knn{};
};

struct ObjectiveVector {
    double error_rate = 0.0;   // f1 in [0, 1]
    std::size_t size = 0;      // f2
    double missing_pct = 0.0;  // f3 in [0, 100]

    std::array<double, 3> values() const noexcept {
        return {error_rate, static_cast<double>(size), missing_pct};
    }
    bool operator==(const ObjectiveVector&) const = default;
};

inline FeatureMask binarize(const Candidate& c, double threshold) {
    FeatureMask mask(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) mask.bits[j] = c.position[j] >= threshold ? 1 : 0;
    return mask;
}

inline FeatureMask repair_empty(const Candidate& c, FeatureMask mask) {
    if (mask.selected_count() > 0 || c.size() == 0) return mask;
    std::size_t best = 0;
    for (std::size_t j = 1; j < c.size(); ++j) {
        if (c.position[j] > c.position[best]) best = j;
    }
    mask.bits[best] = 1;
    return mask;
}

/// lm: missing cells that fall in the selected columns.
inline std::size_t selected_missing(const FeatureMask& mask, const MissingProfile& profile) {
    if (mask.size() != profile.feature_count()) throw contract_error("mask length does not match profile");
    std::size_t lm = 0;
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (mask.selected(j)) lm += profile.per_feature_missing[j];
    }
    return lm;
}

inline double missing_rate_objective(const FeatureMask& mask, const MissingProfile& profile) {
    if (profile.total_missing == 0) return 0.0;
    return 100.0 * static_cast<double>(selected_missing(mask, profile)) /
           static_cast<double>(profile.total_missing);
}

namespace detail {

inline void validate_eval_inputs(const Dataset& ds, const SplitSpec& split, const EvalConfig& cfg) {
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) throw config_error("threshold must lie in (0, 1)");
    if (split.folds != cfg.knn.folds) {
        throw config_error("split was built for " + std::to_string(split.folds) + " folds but the classifier uses " +
                           std::to_string(cfg.knn.folds));
    }
    for (auto idx : split.train_indices) {
        if (idx >= ds.instance_count()) throw contract_error("split index out of range");
    }
    for (auto idx : split.test_indices) {
        if (idx >= ds.instance_count()) throw contract_error("split index out of range");
    }
}

}  // namespace detail

/// Objectives of an already repaired mask on the training partition.
inline ObjectiveVector evaluate_mask(const FeatureMask& mask, const Dataset& ds, const SplitSpec& split,
                                     const EvalConfig& cfg) {
    const auto acc = cross_validated_accuracy(ds, split.train_indices, split.fold_of, mask, cfg.knn);
    return {1.0 - acc.mean_accuracy, mask.selected_count(), missing_rate_objective(mask, ds.profile())};
}

inline ObjectiveVector evaluate(const Candidate& c, const Dataset& ds, const SplitSpec& split, const EvalConfig& cfg) {
    if (c.size() != ds.feature_count()) throw contract_error("candidate length does not match feature count");
    detail::validate_eval_inputs(ds, split, cfg);
    return evaluate_mask(repair_empty(c, binarize(c, cfg.threshold)), ds, split, cfg);
}

/// Test-partition objectives: each test row classified against the whole training partition.
inline ObjectiveVector evaluate_on_test(const FeatureMask& mask, const Dataset& ds, const SplitSpec& split,
                                        const EvalConfig& cfg) {
    if (mask.size() != ds.feature_count()) throw contract_error("mask length does not match feature count");
    if (split.test_indices.empty()) throw contract_error("evaluate_on_test: empty test partition");
    detail::validate_eval_inputs(ds, split, cfg);
    const double acc = holdout_accuracy(ds, split.train_indices, split.test_indices, mask, cfg.knn.k);
    return {1.0 - acc, mask.selected_count(), missing_rate_objective(mask, ds.profile())};
}

/// Bound evaluation context with an optional mask-keyed cache.
///
/// Thread-safe: concurrent calls may race to fill the same cache slot, but the
/// value is a pure function of the mask so whichever insert wins is identical.
class Evaluator {
 public:
    Evaluator(const Dataset& ds, const SplitSpec& split, EvalConfig cfg, bool use_cache = true)
        : ds_(&ds), split_(&split), cfg_(cfg), use_cache_(use_cache) {
        detail::validate_eval_inputs(ds, split, cfg);
    }

    const Dataset& dataset() const noexcept { return *ds_; }
    const SplitSpec& split() const noexcept { return *split_; }
    const EvalConfig& config() const noexcept { return cfg_; }
    std::size_t feature_count() const noexcept { return ds_->feature_count(); }

    FeatureMask mask_of(const Candidate& c) const { return repair_empty(c, binarize(c, cfg_.threshold)); }

    ObjectiveVector operator()(const Candidate& c) const {
        if (c.size() != ds_->feature_count()) throw contract_error("candidate length does not match feature count");
        return of_mask(mask_of(c));
    }

    ObjectiveVector of_mask(const FeatureMask& mask) const {
        if (!use_cache_) return evaluate_mask(mask, *ds_, *split_, cfg_);
        auto key = mask.to_string();
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        const auto value = evaluate_mask(mask, *ds_, *split_, cfg_);
        std::lock_guard lock(mutex_);
        cache_.try_emplace(std::move(key), value);
        return value;
    }

    ObjectiveVector on_test(const FeatureMask& mask) const { return evaluate_on_test(mask, *ds_, *split_, cfg_); }

    /// Evaluate a batch, optionally on several threads. Output order matches input order.
    std::vector<ObjectiveVector> evaluate_all(std::span<const Candidate> batch, std::size_t threads = 1) const {
        std::vector<ObjectiveVector> out(batch.size());
        threads = std::max<std::size_t>(1, std::min(threads, batch.size()));
        if (threads == 1) {
            for (std::size_t i = 0; i < batch.size(); ++i) out[i] = (*this)(batch[i]);
            return out;
        }
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> workers;
            for (std::size_t t = 0; t < threads; ++t) {
                workers.emplace_back([&, t] {
                    try {
                        for (auto i = next++; i < batch.size(); i = next++) out[i] = (*this)(batch[i]);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        return out;
    }

    std::size_t cache_size() const {
        std::lock_guard lock(mutex_);
        return cache_.size();
    }

 private:
    const Dataset* ds_;
    const SplitSpec* split_;
    EvalConfig cfg_;
    bool use_cache_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, ObjectiveVector> cache_;
};

}  // namespace fsmiss

#endif  // FSMISS_OBJECTIVES_HPP
