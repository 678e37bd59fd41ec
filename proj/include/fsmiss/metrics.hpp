#ifndef FSMISS_METRICS_HPP
#define FSMISS_METRICS_HPP

/*
 Front-quality indicators and significance testing.

   igd               mean distance from each reference point to its nearest front point
   hypervolume_3d    exact dominated volume, slab sweep over the third objective
   build_reference_set  non-dominated, de-duplicated union of many fronts
   welch_t_test      unequal-variance t test, two-sided p from the t distribution

 The t distribution CDF goes through the regularized incomplete beta function,
 evaluated with the modified Lentz continued fraction and the symmetry
 I_x(a,b) = 1 - I_{1-x}(b,a) on the slowly converging side.
*/

#include "fsmiss/error.hpp"
#include "fsmiss/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace fsmiss {

using Point3 = std::array<double, 3>;

struct ReferenceSet {
    std::vector<Point3> points;
    std::string provenance;
};

struct HvConfig {
    Point3 reference{1.1, 1.1, 1.1};
    Point3 divisors{1.0, 1.0, 100.0};  // f2 divisor is the feature count

    static HvConfig for_features(std::size_t n) {
        HvConfig cfg;
        cfg.divisors = {1.0, static_cast<double>(n), 100.0};
        return cfg;
    }

    Point3 scale(const Point3& p) const noexcept {
        return {p[0] / divisors[0], p[1] / divisors[1], p[2] / divisors[2]};
    }
};

inline double euclidean(const Point3& a, const Point3& b) noexcept {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double igd(std::span<const Point3> front, std::span<const Point3> reference) {
    if (front.empty() || reference.empty()) throw contract_error("igd: empty input");
    double total = 0.0;
    for (const auto& z : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& d : front) best = std::min(best, euclidean(z, d));
        total += best;
    }
    return total / static_cast<double>(reference.size());
}

namespace detail {

/// Area dominated by 2-D points (x, y) up to (rx, ry).
inline double area_2d(std::vector<std::array<double, 2>> pts, double rx, double ry) {
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double floor_y = ry;
    for (const auto& p : pts) {
        if (p[1] < floor_y) {
            area += (rx - p[0]) * (floor_y - p[1]);
            floor_y = p[1];
        }
    }
    return area;
}

}  // namespace detail

/// Exact hypervolume of an already scaled 3-D point set w.r.t. `ref`.
/// Points that do not lie inside the reference box contribute nothing.
inline double hypervolume_scaled(std::span<const Point3> points, const Point3& ref) {
    std::vector<Point3> pts;
    for (const auto& p : points) {
        if (p[0] < ref[0] && p[1] < ref[1] && p[2] < ref[2]) pts.push_back(p);
    }
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end(), [](const Point3& a, const Point3& b) { return a[2] < b[2]; });

    double volume = 0.0;
    std::vector<std::array<double, 2>> slice;
    std::size_t i = 0;
    while (i < pts.size()) {
        const double z = pts[i][2];
        while (i < pts.size() && pts[i][2] == z) {
            slice.push_back({pts[i][0], pts[i][1]});
            ++i;
        }
        const double z_next = i < pts.size() ? pts[i][2] : ref[2];
        volume += detail::area_2d(slice, ref[0], ref[1]) * (z_next - z);
    }
    return volume;
}

/// Hypervolume of raw objective vectors after dividing by the configured divisors.
inline double hypervolume_3d(std::span<const Point3> front, const HvConfig& cfg) {
    std::vector<Point3> scaled;
    scaled.reserve(front.size());
    for (const auto& p : front) scaled.push_back(cfg.scale(p));
    return hypervolume_scaled(scaled, cfg.reference);
}

/// Non-dominated subset of `points`, exact duplicates removed, sorted lexicographically.
inline std::vector<Point3> nondominated_unique(std::vector<Point3> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Point3> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            dominated = j != i && dominates(points[j], points[i]);
        }
        if (!dominated) out.push_back(points[i]);
    }
    return out;
}

inline ReferenceSet build_reference_set(std::span<const std::vector<Point3>> fronts, std::string provenance = {}) {
    if (fronts.empty()) throw contract_error("build_reference_set: no fronts");
    std::vector<Point3> all;
    for (const auto& f : fronts) all.insert(all.end(), f.begin(), f.end());
    if (all.empty()) throw contract_error("build_reference_set: all fronts are empty");
    return {nondominated_unique(std::move(all)), std::move(provenance)};
}

inline double mean_of(std::span<const double> xs) {
    if (xs.empty()) throw contract_error("mean of an empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Sample variance (n - 1 denominator).
inline double variance_of(std::span<const double> xs) {
    if (xs.size() < 2) throw contract_error("variance needs at least two values");
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return ss / static_cast<double>(xs.size() - 1);
}

inline double stddev_of(std::span<const double> xs) { return std::sqrt(variance_of(xs)); }

namespace detail {

inline double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iter = 500;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
inline double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw contract_error("incomplete_beta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df` degrees of freedom.
inline double student_t_two_sided_p(double t, double df) {
    if (std::isinf(t)) return 0.0;
    return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

enum class Orientation { lower_is_better, higher_is_better };

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    double df = 0.0;
    char verdict = '=';  // '+' first sample better, '-' second better, '=' no significant difference
};

inline TTestResult welch_t_test(std::span<const double> a, std::span<const double> b, Orientation orientation,
                                double alpha = 0.05) {
    if (a.size() < 2 || b.size() < 2) throw contract_error("welch_t_test: need at least two values per sample");
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    const double va = variance_of(a) / static_cast<double>(a.size());
    const double vb = variance_of(b) / static_cast<double>(b.size());
    if (!std::isfinite(va) || !std::isfinite(vb)) throw contract_error("welch_t_test: non-finite variance");

    TTestResult r;
    const double se2 = va + vb;
    const double diff = ma - mb;
    if (se2 == 0.0) {
        r.df = static_cast<double>(a.size() + b.size() - 2);
        if (diff == 0.0) return r;
        r.t = diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        r.p = 0.0;
    } else {
        r.t = diff / std::sqrt(se2);
        r.df = se2 * se2 / (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
        r.p = student_t_two_sided_p(r.t, r.df);
    }
    if (r.p < alpha && diff != 0.0) {
        const bool a_better = orientation == Orientation::lower_is_better ? diff < 0.0 : diff > 0.0;
        r.verdict = a_better ? '+' : '-';
    }
    return r;
}

}  // namespace fsmiss

#endif  // FSMISS_METRICS_HPP
