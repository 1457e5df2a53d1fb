#pragma once

#include "lgbqpc/granular_ball.hpp"
#include "lgbqpc/interval_set.hpp"
#include "lgbqpc/polynomial.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace lgbqpc {

enum class SpecificityForm { reciprocal, exponential };
enum class AdaptationRadius { avg, max };

struct QualityConfig {
    double           gamma{0.0};
    SpecificityForm  specificity_form{SpecificityForm::reciprocal};
    AdaptationRadius radius_for_adaptation{AdaptationRadius::avg};
};

/// Members within the average radius of the center, boundary inclusive. The comparison
/// carries a relative slack of 1e-12 so that points equidistant from the center are not
/// split by last-bit rounding of the mean.
inline std::size_t coverage(const Dataset& d, const GranularBall& b) {
    const double limit = b.avg_radius * (1.0 + 1e-12);
    std::size_t count = 0;
    for (const auto i : b.members)
        if (euclidean(d.row(i), b.center) <= limit) ++count;
    return count;
}

inline double specificity(double radius, const QualityConfig& cfg) {
    if (cfg.specificity_form == SpecificityForm::exponential) return std::exp(-cfg.gamma * radius);
    return 1.0 / (1.0 + cfg.gamma * radius);
}

inline double quality_from_coverage(std::size_t cov, double avg_radius, const QualityConfig& cfg) {
    return static_cast<double>(cov) * specificity(avg_radius, cfg);
}

inline double quality(const Dataset& d, const GranularBall& b, const QualityConfig& cfg) {
    return quality_from_coverage(coverage(d, b), b.avg_radius, cfg);
}

inline double penalized_quality(const Dataset& d, const GranularBall& b, const QualityConfig& cfg, double lambda) {
    return quality(d, b, cfg) - lambda;
}

namespace detail {

inline double population_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace detail

/// Spread statistics of a ball's members used to decide whether the ball is badly
/// described by a hypersphere.
struct ShapeStats {
    double variance_cv{0.0};      // pop-std / mean of the per-feature variances
    double max_abs_corr{0.0};     // largest |Pearson r| over feature pairs
};

inline ShapeStats shape_stats(const Dataset& d, const GranularBall& b) {
    const std::size_t m = d.n_features();
    const double cnt = static_cast<double>(b.size());

    std::vector<double> var(m, 0.0);
    for (const auto i : b.members)
        for (std::size_t j = 0; j < m; ++j) {
            const double dev = d(i, j) - b.center[j];
            var[j] += dev * dev;
        }
    for (auto& v : var) v /= cnt;

    ShapeStats s;
    const double mv = detail::population_mean(var);
    if (mv > 0.0) {
        double ss = 0.0;
        for (const double v : var) ss += (v - mv) * (v - mv);
        s.variance_cv = std::sqrt(ss / static_cast<double>(m)) / mv;
    }

    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = a + 1; c < m; ++c) {
            if (!(var[a] > 0.0) || !(var[c] > 0.0)) continue;
            double cov = 0.0;
            for (const auto i : b.members) cov += (d(i, a) - b.center[a]) * (d(i, c) - b.center[c]);
            cov /= cnt;
            const double r = std::min(1.0, std::abs(cov) / std::sqrt(var[a] * var[c]));
            s.max_abs_corr = std::max(s.max_abs_corr, r);
        }
    return s;
}

/// True when the ball is big enough to matter (|X| >= cbrt(n)) and its members are
/// anisotropic: feature-variance CV above 0.1 or some feature pair with |r| above 0.3.
inline bool adjustment_criterion(const Dataset& d, const GranularBall& b, std::size_t n) {
    if (static_cast<double>(b.size()) < std::cbrt(static_cast<double>(n))) return false;
    const auto s = shape_stats(d, b);
    return s.variance_cv > 0.1 || s.max_abs_corr > 0.3;
}

/// Coverages and radii of a parent ball and its two sub-balls, the inputs of the
/// division-gain inequality.
struct DivisionTerms {
    double parent_cov, left_cov, right_cov;
    double parent_r, left_r, right_r;
};

/// left/(1+g rl) + right/(1+g rr) - lambda - parent/(1+g rp), multiplied through by the
/// (positive) product of the three denominators.
inline Cubic division_gain_polynomial(const DivisionTerms& t, double lambda) {
    const auto lin = [](double r) { return std::array<double, 2>{1.0, r}; };
    const Cubic a = product_of_linear({lin(t.right_r), lin(t.parent_r)});
    const Cubic b = product_of_linear({lin(t.left_r), lin(t.parent_r)});
    const Cubic den = product_of_linear({lin(t.left_r), lin(t.right_r), lin(t.parent_r)});
    const Cubic x = product_of_linear({lin(t.left_r), lin(t.right_r)});
    Cubic p{};
    for (int i = 0; i < 4; ++i) p[i] = t.left_cov * a[i] + t.right_cov * b[i] - lambda * den[i] - t.parent_cov * x[i];
    return p;
}

inline DivisionTerms division_terms(const Dataset& d, const GranularBall& parent, const GranularBall& left,
                                    const GranularBall& right, AdaptationRadius which) {
    const auto r = [which](const GranularBall& g) { return which == AdaptationRadius::max ? g.max_radius : g.avg_radius; };
    return DivisionTerms{static_cast<double>(coverage(d, parent)),
                         static_cast<double>(coverage(d, left)),
                         static_cast<double>(coverage(d, right)),
                         r(parent),
                         r(left),
                         r(right)};
}

/// Granularity levels at which splitting the parent strictly increases the penalized
/// quality sum under the reciprocal specificity.
inline IntervalSet division_gain_interval(const Dataset& d, const GranularBall& parent, const GranularBall& left,
                                          const GranularBall& right, double lambda, const QualityConfig& cfg) {
    return solve_sign_region(division_gain_polynomial(division_terms(d, parent, left, right, cfg.radius_for_adaptation), lambda));
}

}  // namespace lgbqpc
