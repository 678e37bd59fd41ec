#ifndef FSMISS_NSGA2_HPP
#define FSMISS_NSGA2_HPP

/*
 NSGA-II: binary tournament on (rank, crowding distance), SBX + polynomial
 mutation, elitist merge, last front truncated by descending crowding distance.
*/

#include "fsmiss/engine.hpp"
#include "fsmiss/evolution.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace fsmiss {

/// Crowding distance of every member of one front. Extremes per objective are infinite.
template <class Vec>
std::vector<double> crowding_distance(std::span<const Vec> front) {
    const auto n = front.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);
    if (n == 0) return dist;
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    const auto m = front.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][obj] < front[b][obj]; });
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        const double range = static_cast<double>(front[order.back()][obj]) - static_cast<double>(front[order.front()][obj]);
        if (range <= 0.0) continue;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double gap = static_cast<double>(front[order[i + 1]][obj]) - static_cast<double>(front[order[i - 1]][obj]);
            dist[order[i]] += gap / range;
        }
    }
    return dist;
}

template <class Vec>
std::vector<double> crowding_distance(const std::vector<Vec>& front) {
    return crowding_distance(std::span<const Vec>(front));
}

namespace detail {

/// Rank and crowding for every member of `pop`.
inline std::vector<double> crowding_by_front(const FrontPartition& part, std::span<const std::array<double, 3>> pts) {
    std::vector<double> crowd(pts.size(), 0.0);
    for (const auto& front : part.fronts) {
        std::vector<std::array<double, 3>> fp;
        fp.reserve(front.size());
        for (auto idx : front) fp.push_back(pts[idx]);
        const auto d = crowding_distance(fp);
        for (std::size_t i = 0; i < front.size(); ++i) crowd[front[i]] = d[i];
    }
    return crowd;
}

inline std::size_t tournament(const FrontPartition& part, const std::vector<double>& crowd, Rng& rng) {
    const auto n = part.size();
    const auto a = static_cast<std::size_t>(rng.below(n));
    const auto b = static_cast<std::size_t>(rng.below(n));
    if (part.rank[b] < part.rank[a]) return b;
    if (part.rank[a] < part.rank[b]) return a;
    return crowd[b] > crowd[a] ? b : a;
}

}  // namespace detail

/// Survivor indices into `merged`: whole fronts, then the last front by descending crowding.
inline std::vector<std::size_t> nsga2_environmental_selection(const Population& merged, std::size_t target) {
    const auto pts = objective_points(merged);
    const auto part = fast_nondominated_sort(pts);
    std::vector<std::size_t> survivors;
    for (const auto& front : part.fronts) {
        if (survivors.size() + front.size() <= target) {
            survivors.insert(survivors.end(), front.begin(), front.end());
            if (survivors.size() == target) break;
            continue;
        }
        std::vector<std::array<double, 3>> fp;
        for (auto idx : front) fp.push_back(pts[idx]);
        const auto crowd = crowding_distance(fp);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
        for (std::size_t i = 0; survivors.size() < target; ++i) survivors.push_back(front[order[i]]);
        break;
    }
    return survivors;
}

inline EvolutionResult nsga2_evolve(const Evaluator& eval, const EngineConfig& cfg,
                                    const GenerationObserver& observer = {}) {
    detail::validate_engine(cfg);
    auto rng = make_rng(cfg.seed);

    EvolutionResult result;
    result.population = detail::initial_population(eval, cfg, rng);
    result.evaluations = cfg.population_size;
    if (observer) {
        auto snapshot = result.population;
        assign_ranks(snapshot);
        observer(0, snapshot);
    }

    while (result.evaluations < cfg.max_evaluations) {
        const auto pts = objective_points(result.population);
        const auto part = fast_nondominated_sort(pts);
        const auto crowd = detail::crowding_by_front(part, pts);

        std::vector<Candidate> children;
        children.reserve(cfg.population_size);
        while (children.size() < cfg.population_size) {
            const auto a = detail::tournament(part, crowd, rng);
            const auto b = detail::tournament(part, crowd, rng);
            auto [c1, c2] = sbx_crossover(result.population[a].candidate, result.population[b].candidate,
                                          cfg.variation, rng);
            children.push_back(polynomial_mutation(std::move(c1), cfg.variation, rng));
            if (children.size() < cfg.population_size) {
                children.push_back(polynomial_mutation(std::move(c2), cfg.variation, rng));
            }
        }
        auto offspring = make_individuals(std::move(children), eval, cfg.threads);
        result.evaluations += offspring.size();

        Population merged = std::move(result.population);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        const auto survivors = nsga2_environmental_selection(merged, cfg.population_size);
        Population next;
        next.reserve(cfg.population_size);
        for (auto idx : survivors) next.push_back(std::move(merged[idx]));
        result.population = std::move(next);
        ++result.generations;
        if (observer) {
            auto snapshot = result.population;
            assign_ranks(snapshot);
            observer(result.generations, snapshot);
        }
    }
    assign_ranks(result.population);
    return result;
}

inline EvolutionResult nsga2_evolve(const Dataset& ds, const SplitSpec& split, const EngineConfig& cfg,
                                    const GenerationObserver& observer = {}) {
    const Evaluator eval(ds, split, cfg.eval);
    return nsga2_evolve(eval, cfg, observer);
}

}  // namespace fsmiss

#endif  // FSMISS_NSGA2_HPP
