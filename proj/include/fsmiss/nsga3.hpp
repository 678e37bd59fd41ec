#ifndef FSMISS_NSGA3_HPP
#define FSMISS_NSGA3_HPP

/*
 NSGA-III.

 Each generation: random-pairing variation -> merge parents and offspring ->
 non-dominated sort -> copy whole fronts while they fit. When the last
 admitted front F_l overfills the population, the survivors S_t = F_1..F_l
 are translated to the ideal point and scaled by their per-objective range,
 every member is attached to the reference line with the smallest
 perpendicular distance, and the K free slots are filled from F_l by niche
 counting (least crowded reference point first, closest member for an empty
 niche, random member otherwise).
*/

#include "fsmiss/engine.hpp"
#include "fsmiss/evolution.hpp"
#include "fsmiss/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace fsmiss {

struct ReferencePointSet {
    std::vector<std::vector<double>> points;
    std::size_t divisions = 0;

    std::size_t size() const noexcept { return points.size(); }
    std::size_t dimension() const noexcept { return points.empty() ? 0 : points.front().size(); }
};

struct Association {
    std::vector<std::size_t> nearest;  // reference index per point
    std::vector<double> distance;      // perpendicular distance to that reference line
};

/// Binomial coefficient; exact for the small arguments used here.
inline std::size_t binomial(std::size_t n, std::size_t k) noexcept {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Das-Dennis simplex lattice: all M-vectors with entries in {0, 1/P, ..., 1} summing to 1,
/// enumerated in ascending lexicographic order.
inline ReferencePointSet das_dennis(std::size_t objectives, std::size_t divisions) {
    if (objectives < 2) throw config_error("das_dennis: need at least two objectives");
    if (divisions < 1) throw config_error("das_dennis: need at least one division");
    ReferencePointSet set;
    set.divisions = divisions;
    set.points.reserve(binomial(divisions + objectives - 1, divisions));
    std::vector<std::size_t> counts(objectives, 0);

    // depth-first over the first M-1 coordinates; the last takes the remainder
    auto recurse = [&](auto&& self, std::size_t axis, std::size_t remaining) -> void {
        if (axis + 1 == objectives) {
            counts[axis] = remaining;
            std::vector<double> p(objectives);
            for (std::size_t m = 0; m < objectives; ++m) {
                p[m] = static_cast<double>(counts[m]) / static_cast<double>(divisions);
            }
            set.points.push_back(std::move(p));
            return;
        }
        for (std::size_t c = 0; c <= remaining; ++c) {
            counts[axis] = c;
            self(self, axis + 1, remaining - c);
        }
    };
    recurse(recurse, 0, divisions);
    return set;
}

/// Translate to the per-objective minimum and divide by the per-objective range
/// (ranges below 1e-12 are treated as 1).
template <class Vec>
std::vector<std::vector<double>> normalize_objectives(std::span<const Vec> points) {
    if (points.empty()) throw contract_error("normalize_objectives: empty set");
    const auto m = points.front().size();
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
    for (const auto& p : points) {
        for (std::size_t j = 0; j < m; ++j) {
            lo[j] = std::min(lo[j], static_cast<double>(p[j]));
            hi[j] = std::max(hi[j], static_cast<double>(p[j]));
        }
    }
    std::vector<std::vector<double>> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        std::vector<double> q(m);
        for (std::size_t j = 0; j < m; ++j) {
            double range = hi[j] - lo[j];
            if (range < 1e-12) range = 1.0;
            q[j] = (static_cast<double>(p[j]) - lo[j]) / range;
        }
        out.push_back(std::move(q));
    }
    return out;
}

template <class Vec>
std::vector<std::vector<double>> normalize_objectives(const std::vector<Vec>& points) {
    return normalize_objectives(std::span<const Vec>(points));
}

/// Length of the component of s orthogonal to the line through the origin and r.
inline double perpendicular_distance(std::span<const double> s, std::span<const double> r) noexcept {
    double rs = 0.0;
    double rr = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        rs += r[j] * s[j];
        rr += r[j] * r[j];
    }
    const double scale = rr > 0.0 ? rs / rr : 0.0;
    double d2 = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double diff = s[j] - scale * r[j];
        d2 += diff * diff;
    }
    return std::sqrt(d2);
}

/// Nearest reference line per point; ties go to the lower reference index.
inline Association associate(std::span<const std::vector<double>> normalized, const ReferencePointSet& refs) {
    if (refs.size() == 0) throw contract_error("associate: empty reference set");
    Association a;
    a.nearest.resize(normalized.size());
    a.distance.resize(normalized.size());
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        if (normalized[i].size() != refs.dimension()) throw contract_error("associate: dimension mismatch");
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < refs.size(); ++j) {
            const double d = perpendicular_distance(normalized[i], refs.points[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        a.nearest[i] = best_j;
        a.distance[i] = best;
    }
    return a;
}

/// Pick K members of `last_front` (indices into `assoc`) by niche counting.
/// `niche_counts` must hold the counts of the already admitted fronts and is
/// updated in place (it grows by exactly one per pick).
inline std::vector<std::size_t> niche_select(std::size_t K, std::vector<std::size_t> last_front,
                                             const Association& assoc, std::vector<std::size_t>& niche_counts,
                                             Rng& rng) {
    if (K > last_front.size()) throw contract_error("niche_select: K exceeds the last front");
    std::vector<bool> active(niche_counts.size(), true);
    std::vector<std::size_t> chosen;
    chosen.reserve(K);
    std::vector<std::size_t> minimal;
    std::vector<std::size_t> members;

    while (chosen.size() < K) {
        std::size_t min_count = std::numeric_limits<std::size_t>::max();
        for (std::size_t j = 0; j < niche_counts.size(); ++j) {
            if (active[j]) min_count = std::min(min_count, niche_counts[j]);
        }
        if (min_count == std::numeric_limits<std::size_t>::max()) {
            throw std::logic_error("niche_select: every reference point exhausted before K picks");
        }
        minimal.clear();
        for (std::size_t j = 0; j < niche_counts.size(); ++j) {
            if (active[j] && niche_counts[j] == min_count) minimal.push_back(j);
        }
        const auto ref = minimal[rng.below(minimal.size())];

        members.clear();
        for (std::size_t pos = 0; pos < last_front.size(); ++pos) {
            if (assoc.nearest[last_front[pos]] == ref) members.push_back(pos);
        }
        if (members.empty()) {
            active[ref] = false;
            continue;
        }
        std::size_t pick = members.front();
        if (niche_counts[ref] == 0) {
            for (auto pos : members) {
                if (assoc.distance[last_front[pos]] < assoc.distance[last_front[pick]]) pick = pos;
            }
        } else {
            pick = members[rng.below(members.size())];
        }
        chosen.push_back(last_front[pick]);
        ++niche_counts[ref];
        last_front.erase(last_front.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return chosen;
}

struct SelectionTrace {
    bool niching_used = false;
    std::vector<std::size_t> survivors;  // indices into the merged population
};

/// Environmental selection of `target` survivors out of `merged` (indices returned in trace).
inline SelectionTrace nsga3_environmental_selection(const Population& merged, std::size_t target,
                                                    const ReferencePointSet& refs, Rng& rng) {
    const auto pts = objective_points(merged);
    const auto part = fast_nondominated_sort(pts);
    SelectionTrace trace;

    std::size_t l = 0;
    std::vector<std::size_t> admitted;
    while (admitted.size() < target && l < part.fronts.size()) {
        admitted.insert(admitted.end(), part.fronts[l].begin(), part.fronts[l].end());
        ++l;
    }
    if (admitted.size() == target) {
        trace.survivors = std::move(admitted);
        return trace;
    }

    const auto& last = part.fronts[l - 1];
    std::vector<std::size_t> kept(admitted.begin(), admitted.end() - static_cast<std::ptrdiff_t>(last.size()));
    const auto K = target - kept.size();

    // positions 0..kept-1 are the earlier fronts, the rest is F_l
    std::vector<std::array<double, 3>> st_points;
    st_points.reserve(admitted.size());
    for (auto idx : admitted) st_points.push_back(pts[idx]);
    const auto normalized = normalize_objectives(st_points);
    const auto assoc = associate(normalized, refs);

    std::vector<std::size_t> niche_counts(refs.size(), 0);
    for (std::size_t pos = 0; pos < kept.size(); ++pos) ++niche_counts[assoc.nearest[pos]];
    std::vector<std::size_t> last_positions(last.size());
    for (std::size_t i = 0; i < last.size(); ++i) last_positions[i] = kept.size() + i;

    const auto picks = niche_select(K, std::move(last_positions), assoc, niche_counts, rng);
    trace.niching_used = true;
    trace.survivors = std::move(kept);
    for (auto pos : picks) trace.survivors.push_back(admitted[pos]);
    return trace;
}

/// Run NSGA-III on the feature-selection problem until the evaluation budget is spent.
inline EvolutionResult nsga3_evolve(const Evaluator& eval, const Nsga3Config& cfg,
                                    const GenerationObserver& observer = {}) {
    detail::validate_engine(cfg);
    const auto refs = das_dennis(cfg.objective_count, cfg.divisions);
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
        auto children = offspring_random_pairing(result.population, cfg.variation, rng);
        auto offspring = make_individuals(std::move(children), eval, cfg.threads);
        result.evaluations += offspring.size();

        Population merged = std::move(result.population);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        const auto trace = nsga3_environmental_selection(merged, cfg.population_size, refs, rng);
        Population next;
        next.reserve(cfg.population_size);
        for (auto idx : trace.survivors) next.push_back(std::move(merged[idx]));
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

inline EvolutionResult nsga3_evolve(const Dataset& ds, const SplitSpec& split, const Nsga3Config& cfg,
                                    const GenerationObserver& observer = {}) {
    const Evaluator eval(ds, split, cfg.eval);
    return nsga3_evolve(eval, cfg, observer);
}

}  // namespace fsmiss

#endif  // FSMISS_NSGA3_HPP
