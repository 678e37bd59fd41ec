#ifndef FSMISS_ENGINE_HPP
#define FSMISS_ENGINE_HPP

#include "fsmiss/evolution.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace fsmiss {

/// Settings shared by every search algorithm in the library.
struct EngineConfig {
    std::size_t population_size = 100;
    std::size_t max_evaluations = 100000;
    std::size_t divisions = 13;  // reference-point lattice divisions (NSGA-III only)
    std::size_t objective_count = 3;
    VariationParams variation{};
    EvalConfig eval{};
    std::uint64_t seed = 1;
    std::size_t threads = 1;  // evaluation workers; results do not depend on it
};

using Nsga3Config = EngineConfig;

struct EvolutionResult {
    Population population;      // ranked
    std::size_t evaluations = 0;
    std::size_t generations = 0;
};

/// Called with the generation number (0 = initial population) and the current population.
using GenerationObserver = std::function<void(std::size_t, const Population&)>;

namespace detail {

inline void validate_engine(const EngineConfig& cfg) {
    if (cfg.population_size == 0) throw config_error("population size must be positive");
    if (cfg.max_evaluations < cfg.population_size) {
        throw config_error("evaluation budget " + std::to_string(cfg.max_evaluations) +
                           " is smaller than one population of " + std::to_string(cfg.population_size));
    }
    if (cfg.objective_count != 3) throw config_error("this problem has exactly three objectives");
    const auto& v = cfg.variation;
    if (v.crossover_probability < 0.0 || v.crossover_probability > 1.0 || v.mutation_probability < 0.0 ||
        v.mutation_probability > 1.0 || v.crossover_variable_probability < 0.0 ||
        v.crossover_variable_probability > 1.0) {
        throw config_error("variation probabilities must lie in [0, 1]");
    }
    if (!(v.crossover_index > 0.0) || !(v.mutation_index > 0.0)) {
        throw config_error("distribution indices must be positive");
    }
    if (!(v.upper > v.lower)) throw config_error("variable bounds are empty");
}

/// Uniform initial population; shared by all algorithms so equal seeds give equal generation 0.
inline Population initial_population(const Evaluator& eval, const EngineConfig& cfg, Rng& rng) {
    auto candidates = random_candidates(cfg.population_size, eval.feature_count(), cfg.variation, rng);
    return make_individuals(std::move(candidates), eval, cfg.threads);
}

}  // namespace detail

}  // namespace fsmiss

#endif  // FSMISS_ENGINE_HPP
