#pragma once

#include "lgbqpc/granular_ball.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgbqpc {

/// Which rule flags a granular ball as abnormal (forced to divide).
enum class AbnormalPolicy {
    pojg_plus,  // mean + std thresholds on both radii and size
    jia,        // R_ave > 2 mean(R_ave) and |X| < 0.5 mean(N)
    xie_tkde,   // R_max > 2 max(mean, median)(R_max)
    xie_icde,   // R_max > 1.5 max(mean, median)(R_max)
    combined,   // xie_tkde or jia
    none,
};

inline std::string_view to_string(AbnormalPolicy p) {
    switch (p) {
        case AbnormalPolicy::pojg_plus: return "pojg_plus";
        case AbnormalPolicy::jia: return "jia";
        case AbnormalPolicy::xie_tkde: return "xie_tkde";
        case AbnormalPolicy::xie_icde: return "xie_icde";
        case AbnormalPolicy::combined: return "combined";
        case AbnormalPolicy::none: return "none";
    }
    return "?";
}

inline AbnormalPolicy parse_policy(std::string_view s) {
    for (auto p : {AbnormalPolicy::pojg_plus, AbnormalPolicy::jia, AbnormalPolicy::xie_tkde, AbnormalPolicy::xie_icde,
                   AbnormalPolicy::combined, AbnormalPolicy::none})
        if (to_string(p) == s) return p;
    throw std::invalid_argument("unknown abnormal policy '" + std::string{s} + "'");
}

struct BallShape {
    double      avg_radius;
    double      max_radius;
    std::size_t size;
};

inline BallShape shape_of(const GranularBall& b) { return {b.avg_radius, b.max_radius, b.size()}; }

namespace detail {

struct Moments {
    double mean{0.0};
    double sd{0.0};
    double median{0.0};
};

inline Moments moments(std::vector<double> v) {
    Moments m;
    for (const double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (const double x : v) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(v.size()));
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    m.median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    return m;
}

}  // namespace detail

/// Cut-offs derived from one ball set. Kept separate from the flagging so that the same
/// cut-offs can be applied to balls produced later by splitting.
struct AbnormalThresholds {
    AbnormalPolicy policy{AbnormalPolicy::none};
    double max_radius{0.0};   // R_max above this is abnormal
    double avg_radius{0.0};   // R_ave above this ...
    double size{0.0};         // ... together with |X| below this is abnormal

    bool is_abnormal(const BallShape& b) const noexcept {
        const auto count = static_cast<double>(b.size);
        switch (policy) {
            case AbnormalPolicy::pojg_plus:
                return b.max_radius > max_radius || (b.avg_radius > avg_radius && count < size);
            case AbnormalPolicy::jia: return b.avg_radius > avg_radius && count < size;
            case AbnormalPolicy::xie_tkde:
            case AbnormalPolicy::xie_icde: return b.max_radius > max_radius;
            case AbnormalPolicy::combined:
                return b.max_radius > max_radius || (b.avg_radius > avg_radius && count < size);
            case AbnormalPolicy::none: return false;
        }
        return false;
    }
};

inline AbnormalThresholds abnormal_thresholds(std::span<const BallShape> balls, AbnormalPolicy policy) {
    if (balls.empty()) throw std::invalid_argument("abnormal detection needs at least one ball");
    AbnormalThresholds t;
    t.policy = policy;
    if (policy == AbnormalPolicy::none) return t;

    std::vector<double> ravg, rmax, cnt;
    for (const auto& b : balls) {
        ravg.push_back(b.avg_radius);
        rmax.push_back(b.max_radius);
        cnt.push_back(static_cast<double>(b.size));
    }
    const auto a = detail::moments(ravg);
    const auto x = detail::moments(rmax);
    const auto c = detail::moments(cnt);

    switch (policy) {
        case AbnormalPolicy::pojg_plus:
            t.max_radius = x.mean + x.sd;
            t.avg_radius = a.mean + a.sd;
            t.size = c.mean - c.sd;
            break;
        case AbnormalPolicy::jia:
            t.avg_radius = 2.0 * a.mean;
            t.size = 0.5 * c.mean;
            break;
        case AbnormalPolicy::xie_tkde: t.max_radius = 2.0 * std::max(x.mean, x.median); break;
        case AbnormalPolicy::xie_icde: t.max_radius = 1.5 * std::max(x.mean, x.median); break;
        case AbnormalPolicy::combined:
            t.max_radius = 2.0 * std::max(x.mean, x.median);
            t.avg_radius = 2.0 * a.mean;
            t.size = 0.5 * c.mean;
            break;
        case AbnormalPolicy::none: break;
    }
    return t;
}

/// Flags each ball against statistics taken over the whole supplied set.
inline std::vector<bool> detect_abnormal(std::span<const BallShape> balls, AbnormalPolicy policy) {
    const auto t = abnormal_thresholds(balls, policy);
    std::vector<bool> flags(balls.size(), false);
    for (std::size_t i = 0; i < balls.size(); ++i) flags[i] = t.is_abnormal(balls[i]);
    return flags;
}

inline std::vector<bool> detect_abnormal(const std::vector<GranularBall>& balls, AbnormalPolicy policy) {
    std::vector<BallShape> shapes;
    shapes.reserve(balls.size());
    for (const auto& b : balls) shapes.push_back(shape_of(b));
    return detect_abnormal(shapes, policy);
}

}  // namespace lgbqpc
