#ifndef FSMISS_EVOLUTION_HPP
#define FSMISS_EVOLUTION_HPP

/*
 Algorithm-agnostic evolutionary machinery: Pareto dominance, fast
 non-dominated sorting, simulated binary crossover, polynomial mutation.

 All objectives are minimized. Variation works on [lower, upper] bounds
 (default [0, 1]) and clamps every child into them.
*/

#include "fsmiss/objectives.hpp"
#include "fsmiss/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fsmiss {

struct Individual {
    Candidate candidate;
    ObjectiveVector objectives;
    std::optional<std::size_t> rank;  // 1-based, set by sorting
};

using Population = std::vector<Individual>;

/// Non-domination fronts of a population; fronts[0] is rank 1.
struct FrontPartition {
    std::vector<std::vector<std::size_t>> fronts;  // each front ascending
    std::vector<std::size_t> rank;                 // 1-based rank per index

    std::size_t size() const noexcept { return rank.size(); }
};

struct VariationParams {
    double crossover_probability = 1.0;
    double crossover_index = 30.0;
    double crossover_variable_probability = 0.5;
    double mutation_probability = 0.0;  // 0 means "use 1/n"
    double mutation_index = 20.0;
    double lower = 0.0;
    double upper = 1.0;

    double mutation_rate_for(std::size_t n) const noexcept {
        return mutation_probability > 0.0 ? mutation_probability : 1.0 / static_cast<double>(std::max<std::size_t>(n, 1));
    }
};

template <class Vec>
bool dominates(const Vec& a, const Vec& b) {
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) { return dominates(a.values(), b.values()); }

/// Fast non-dominated sort: n_p counts the dominators of p, S_p lists what p dominates;
/// fronts are peeled by decrementing n_q of everything a front member dominates.
template <class Vec>
FrontPartition fast_nondominated_sort(std::span<const Vec> objs) {
    const auto n = objs.size();
    FrontPartition part;
    part.rank.assign(n, 0);
    if (n == 0) return part;

    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> dominator_count(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objs[p], objs[q])) {
                dominated_by[p].push_back(q);
            } else if (dominates(objs[q], objs[p])) {
                ++dominator_count[p];
            }
        }
        if (dominator_count[p] == 0) {
            part.rank[p] = 1;
            current.push_back(p);
        }
    }

    std::size_t rank = 1;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto p : current) {
            for (auto q : dominated_by[p]) {
                if (--dominator_count[q] == 0) {
                    part.rank[q] = rank + 1;
                    next.push_back(q);
                }
            }
        }
        std::sort(current.begin(), current.end());
        part.fronts.push_back(std::move(current));
        current = std::move(next);
        ++rank;
    }
    return part;
}

template <class Vec>
FrontPartition fast_nondominated_sort(const std::vector<Vec>& objs) {
    return fast_nondominated_sort(std::span<const Vec>(objs));
}

inline std::vector<std::array<double, 3>> objective_points(std::span<const Individual> pop) {
    std::vector<std::array<double, 3>> pts;
    pts.reserve(pop.size());
    for (const auto& ind : pop) pts.push_back(ind.objectives.values());
    return pts;
}

/// Sort a population and store 1-based ranks on its members.
inline FrontPartition assign_ranks(Population& pop) {
    const auto pts = objective_points(pop);
    auto part = fast_nondominated_sort(pts);
    for (std::size_t i = 0; i < pop.size(); ++i) pop[i].rank = part.rank[i];
    return part;
}

/// Simulated binary crossover. With probability 1 - p_c the parents are copied.
/// Each variable is recombined with probability crossover_variable_probability and
/// the two child values are swapped with probability 1/2, so either child is
/// centred on the parents' midpoint.
inline std::pair<Candidate, Candidate> sbx_crossover(const Candidate& p1, const Candidate& p2,
                                                     const VariationParams& params, Rng& rng) {
    if (p1.size() != p2.size()) throw contract_error("sbx_crossover: parent lengths differ");
    Candidate c1 = p1;
    Candidate c2 = p2;
    if (!(rng.uniform01() < params.crossover_probability)) return {c1, c2};

    const double exponent = 1.0 / (params.crossover_index + 1.0);
    for (std::size_t j = 0; j < p1.size(); ++j) {
        double y1 = p1.position[j];
        double y2 = p2.position[j];
        if (rng.uniform01() < params.crossover_variable_probability && std::abs(y1 - y2) > 1e-14) {
            const double u = rng.uniform01();
            const double beta =
                u <= 0.5 ? std::pow(2.0 * u, exponent) : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
            const double a = 0.5 * ((1.0 + beta) * y1 + (1.0 - beta) * y2);
            const double b = 0.5 * ((1.0 - beta) * y1 + (1.0 + beta) * y2);
            y1 = a;
            y2 = b;
        }
        if (rng.uniform01() < 0.5) std::swap(y1, y2);
        c1.position[j] = std::clamp(y1, params.lower, params.upper);
        c2.position[j] = std::clamp(y2, params.lower, params.upper);
    }
    return {std::move(c1), std::move(c2)};
}

/// Bounded polynomial mutation; each variable mutates with probability p_m (1/n by default).
inline Candidate polynomial_mutation(Candidate c, const VariationParams& params, Rng& rng) {
    const double rate = params.mutation_rate_for(c.size());
    const double eta = params.mutation_index;
    const double exponent = 1.0 / (eta + 1.0);
    const double span = params.upper - params.lower;
    for (auto& y : c.position) {
        if (!(rng.uniform01() < rate)) continue;
        const double d1 = (y - params.lower) / span;
        const double d2 = (params.upper - y) / span;
        const double r = rng.uniform01();
        double dq = 0.0;
        if (r < 0.5) {
            const double val = 2.0 * r + (1.0 - 2.0 * r) * std::pow(1.0 - d1, eta + 1.0);
            dq = std::pow(val, exponent) - 1.0;
        } else {
            const double val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(1.0 - d2, eta + 1.0);
            dq = 1.0 - std::pow(val, exponent);
        }
        y = std::clamp(y + dq * span, params.lower, params.upper);
    }
    return c;
}

/// size uniform candidates in [lower, upper]^n, drawn row by row.
inline std::vector<Candidate> random_candidates(std::size_t size, std::size_t n, const VariationParams& params,
                                                Rng& rng) {
    std::vector<Candidate> out(size);
    for (auto& c : out) {
        c.position.resize(n);
        for (auto& x : c.position) x = params.lower + (params.upper - params.lower) * rng.uniform01();
    }
    return out;
}

/// Offspring by random pairing: shuffle parents, cross consecutive pairs, mutate every child.
inline std::vector<Candidate> offspring_random_pairing(std::span<const Individual> parents,
                                                       const VariationParams& params, Rng& rng) {
    const auto n = parents.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order.begin(), order.end());

    std::vector<Candidate> children;
    children.reserve(n);
    for (std::size_t i = 0; children.size() < n; i += 2) {
        const auto& a = parents[order[i % n]].candidate;
        const auto& b = parents[order[(i + 1) % n]].candidate;
        auto [c1, c2] = sbx_crossover(a, b, params, rng);
        children.push_back(polynomial_mutation(std::move(c1), params, rng));
        if (children.size() < n) children.push_back(polynomial_mutation(std::move(c2), params, rng));
    }
    return children;
}

/// Evaluate candidates and wrap them as unranked individuals.
inline Population make_individuals(std::vector<Candidate> candidates, const Evaluator& eval, std::size_t threads) {
    const auto objs = eval.evaluate_all(candidates, threads);
    Population pop(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        pop[i].candidate = std::move(candidates[i]);
        pop[i].objectives = objs[i];
    }
    return pop;
}

}  // namespace fsmiss

#endif  // FSMISS_EVOLUTION_HPP
