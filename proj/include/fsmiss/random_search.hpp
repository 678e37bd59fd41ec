#ifndef FSMISS_RANDOM_SEARCH_HPP
#define FSMISS_RANDOM_SEARCH_HPP

#include "fsmiss/engine.hpp"
#include "fsmiss/evolution.hpp"

#include <vector>

namespace fsmiss {

/// Uniform random sampling with a non-dominated archive. Samples are drawn in
/// population-sized batches from the shared initializer, so the first batch equals
/// the evolutionary algorithms' generation 0 for the same seed.
inline EvolutionResult random_search(const Evaluator& eval, const EngineConfig& cfg,
                                     const GenerationObserver& observer = {}) {
    detail::validate_engine(cfg);
    auto rng = make_rng(cfg.seed);
    EvolutionResult result;
    Population archive;
    std::size_t batch_no = 0;
    while (result.evaluations < cfg.max_evaluations) {
        auto batch = detail::initial_population(eval, cfg, rng);
        result.evaluations += batch.size();
        archive.insert(archive.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
        const auto part = assign_ranks(archive);
        Population front;
        for (auto idx : part.fronts.front()) front.push_back(std::move(archive[idx]));
        archive = std::move(front);
        if (observer) observer(batch_no, archive);
        ++batch_no;
    }
    result.generations = batch_no == 0 ? 0 : batch_no - 1;
    result.population = std::move(archive);
    assign_ranks(result.population);
    return result;
}

}  // namespace fsmiss

#endif  // FSMISS_RANDOM_SEARCH_HPP
