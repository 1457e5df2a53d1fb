#pragma once

#include "lgbqpc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lgbqpc {

/// Hypersphere summary of an instance subset. Members are sorted row indices into the
/// shared Dataset; the center is their mean and the radii are the mean and maximum
/// member-to-center distances.
struct GranularBall {
    std::vector<std::size_t> members;
    std::vector<double>      center;
    double                   avg_radius{0.0};
    double                   max_radius{0.0};

    std::size_t size() const noexcept { return members.size(); }
    bool        is_singleton() const noexcept { return members.size() == 1; }
};

inline GranularBall make_ball(const Dataset& d, std::vector<std::size_t> members) {
    if (members.empty()) throw std::invalid_argument("granular ball needs at least one member");
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw std::invalid_argument("granular ball members must be distinct");
    if (members.back() >= d.size())
        throw std::out_of_range("member index " + std::to_string(members.back()) + " out of range for " +
                                std::to_string(d.size()) + " instances");

    const std::size_t m = d.n_features();
    GranularBall ball;
    ball.center.assign(m, 0.0);
    for (const auto i : members) {
        const auto x = d.row(i);
        for (std::size_t j = 0; j < m; ++j) ball.center[j] += x[j];
    }
    for (auto& c : ball.center) c /= static_cast<double>(members.size());

    double sum = 0.0;
    double mx = 0.0;
    for (const auto i : members) {
        const double r = euclidean(d.row(i), ball.center);
        sum += r;
        mx = std::max(mx, r);
    }
    ball.avg_radius = sum / static_cast<double>(members.size());
    // the mean of the distances can round one ulp above their maximum
    ball.avg_radius = std::min(ball.avg_radius, mx);
    ball.max_radius = mx;
    ball.members = std::move(members);
    return ball;
}

/// 2-division: members go to whichever of the two extreme points is nearer (ties to the
/// first). Returns nullopt when every member coincides with the first extreme point.
inline std::optional<std::pair<GranularBall, GranularBall>> split_ball(const Dataset& d, const GranularBall& b) {
    if (b.size() < 2) throw std::invalid_argument("cannot split a singleton granular ball");

    // members are sorted, so strict > keeps the lowest index on ties
    std::size_t alpha = b.members.front();
    double best = -1.0;
    for (const auto i : b.members) {
        const double r = squared_distance(d.row(i), b.center);
        if (r > best) {
            best = r;
            alpha = i;
        }
    }
    std::size_t beta = b.members.front();
    best = -1.0;
    for (const auto i : b.members) {
        const double r = squared_distance(d.row(i), d.row(alpha));
        if (r > best) {
            best = r;
            beta = i;
        }
    }

    std::vector<std::size_t> near_alpha;
    std::vector<std::size_t> near_beta;
    for (const auto i : b.members) {
        if (squared_distance(d.row(i), d.row(alpha)) <= squared_distance(d.row(i), d.row(beta)))
            near_alpha.push_back(i);
        else
            near_beta.push_back(i);
    }
    if (near_alpha.empty() || near_beta.empty()) return std::nullopt;
    return std::pair{make_ball(d, std::move(near_alpha)), make_ball(d, std::move(near_beta))};
}

inline double center_distance(const GranularBall& a, const GranularBall& b) {
    if (a.center.size() != b.center.size()) throw std::invalid_argument("granular balls differ in dimension");
    return euclidean(a.center, b.center);
}

/// Gap between two balls measured from their average-radius surfaces, clamped at zero.
inline double ball_distance(const GranularBall& a, const GranularBall& b) {
    return std::max(0.0, center_distance(a, b) - (a.avg_radius + b.avg_radius));
}

/// Size over R_ave * R_max^2. Only the density-ablation variant uses it.
inline double gbdpc_density(const GranularBall& b) {
    if (!(b.avg_radius > 0.0) || !(b.max_radius > 0.0))
        throw std::domain_error("density undefined for a ball with zero radius");
    return static_cast<double>(b.size()) / (b.avg_radius * b.max_radius * b.max_radius);
}

}  // namespace lgbqpc
