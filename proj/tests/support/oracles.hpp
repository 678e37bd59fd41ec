#ifndef FSMISS_TESTS_ORACLES_HPP
#define FSMISS_TESTS_ORACLES_HPP

// Independent reference implementations used only by tests. None of these
// call into the library code paths they are used to check.

#include "fsmiss/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fsmiss::oracle {

template <class Vec>
bool weakly_better_somewhere_strictly(const Vec& a, const Vec& b) {
    bool all_le = true;
    bool any_lt = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        all_le = all_le && !(b[i] < a[i]);
        any_lt = any_lt || a[i] < b[i];
    }
    return all_le && any_lt;
}

/// Rank by repeatedly peeling the members no remaining member dominates.
template <class Vec>
std::vector<std::vector<std::size_t>> peel_fronts(const std::vector<Vec>& pts) {
    std::vector<std::size_t> remaining(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) remaining[i] = i;
    std::vector<std::vector<std::size_t>> fronts;
    while (!remaining.empty()) {
        std::vector<std::size_t> front;
        std::vector<std::size_t> rest;
        for (auto i : remaining) {
            bool dominated = false;
            for (auto j : remaining) {
                if (j != i && weakly_better_somewhere_strictly(pts[j], pts[i])) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? rest : front).push_back(i);
        }
        fronts.push_back(front);
        remaining = rest;
    }
    return fronts;
}

/// Hypervolume estimate by uniform sampling of [0, ref]^3: returns (estimate, standard error).
inline std::pair<double, double> hv_monte_carlo(const std::vector<std::array<double, 3>>& pts,
                                                const std::array<double, 3>& ref, std::size_t samples,
                                                std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ux(0.0, ref[0]), uy(0.0, ref[1]), uz(0.0, ref[2]);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::array<double, 3> q{ux(gen), uy(gen), uz(gen)};
        for (const auto& p : pts) {
            if (p[0] <= q[0] && p[1] <= q[1] && p[2] <= q[2]) {
                ++hits;
                break;
            }
        }
    }
    const double box = ref[0] * ref[1] * ref[2];
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return {box * frac, se};
}

inline double igd_double_loop(const std::vector<std::array<double, 3>>& front,
                              const std::vector<std::array<double, 3>>& ref) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        double best = 0.0;
        for (std::size_t j = 0; j < front.size(); ++j) {
            const double d = std::sqrt((ref[i][0] - front[j][0]) * (ref[i][0] - front[j][0]) +
                                       (ref[i][1] - front[j][1]) * (ref[i][1] - front[j][1]) +
                                       (ref[i][2] - front[j][2]) * (ref[i][2] - front[j][2]));
            if (j == 0 || d < best) best = d;
        }
        sum += best;
    }
    return sum / static_cast<double>(ref.size());
}

/// C(n, k) from Pascal's triangle.
inline std::size_t pascal(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        t[i].assign(i + 1, 1);
        for (std::size_t j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return k > n ? 0 : t[n][k];
}

/// Squared-distance-free perpendicular distance: sqrt(|s|^2 - (r.s)^2 / |r|^2).
inline double perpendicular_via_pythagoras(const std::vector<double>& s, const std::vector<double>& r) {
    double ss = 0.0, rs = 0.0, rr = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ss += s[i] * s[i];
        rs += r[i] * s[i];
        rr += r[i] * r[i];
    }
    return std::sqrt(std::max(0.0, ss - rs * rs / rr));
}

/// K-NN by full sort of (distance, index).
inline int knn_full_sort(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                         const std::vector<double>& q, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double s = 0.0;
        for (std::size_t c = 0; c < q.size(); ++c) s += (rows[i][c] - q[c]) * (rows[i][c] - q[c]);
        d.emplace_back(std::sqrt(s), i);
    }
    std::sort(d.begin(), d.end());
    int max_label = *std::max_element(labels.begin(), labels.end());
    std::vector<int> votes(static_cast<std::size_t>(max_label) + 1, 0);
    for (std::size_t i = 0; i < k; ++i) ++votes[static_cast<std::size_t>(labels[d[i].second])];
    int best = 0;
    for (int c = 0; c <= max_label; ++c) {
        if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)]) best = c;
    }
    return best;
}

/// Build a Dataset directly from complete rows (values must already lie in [0,1]).
inline Dataset make_dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                            const std::vector<std::vector<bool>>& missing = {}) {
    const auto n = rows.size();
    const auto m = rows.empty() ? 0 : rows.front().size();
    std::vector<double> flat;
    std::vector<std::uint8_t> mask;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            flat.push_back(rows[i][j]);
            mask.push_back(missing.empty() ? 0 : (missing[i][j] ? 1 : 0));
        }
    }
    return Dataset("toy", n, m, std::move(flat), labels, std::move(mask), {});
}

}  // namespace fsmiss::oracle

#endif  // FSMISS_TESTS_ORACLES_HPP
