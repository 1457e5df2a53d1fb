#pragma once

#include "lgbqpc/abnormal.hpp"
#include "lgbqpc/best_cut.hpp"
#include "lgbqpc/gb_tree.hpp"
#include "lgbqpc/quality.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

namespace lgbqpc {

struct PreDivision {
    GBTree      tree;
    IntervalSet gamma_range;
    std::size_t constraints_applied{0};
    std::size_t constraints_skipped{0};  // intersection would have been empty
};

/// Breadth-first division from the universe ball. A node is split when it holds more
/// than cbrt(n) instances and the 2-division separates something. Each split of an
/// anisotropic node contributes the granularity levels at which the split pays off;
/// the running range absorbs a contribution only if the intersection stays nonempty.
inline PreDivision pre_divide(const Dataset& d, double lambda, const QualityConfig& cfg = {}) {
    const std::size_t n = d.size();
    const double threshold = std::cbrt(static_cast<double>(n));

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    PreDivision out{GBTree{make_ball(d, std::move(all))}, IntervalSet::half_line()};

    std::deque<std::size_t> queue{out.tree.root()};
    while (!queue.empty()) {
        const auto id = queue.front();
        queue.pop_front();
        const auto& node = out.tree[id];
        if (!(static_cast<double>(node.ball.size()) > threshold)) continue;

        auto halves = split_ball(d, node.ball);
        if (!halves) continue;

        if (adjustment_criterion(d, node.ball, n)) {
            auto feasible = division_gain_interval(d, node.ball, halves->first, halves->second, lambda, cfg);
            auto narrowed = intersect(out.gamma_range, feasible);
            if (narrowed.empty()) {
                ++out.constraints_skipped;
            } else {
                out.gamma_range = std::move(narrowed);
                ++out.constraints_applied;
            }
        }
        const auto [l, r] = out.tree.attach_children(id, std::move(halves->first), std::move(halves->second));
        queue.push_back(l);
        queue.push_back(r);
    }
    return out;
}

/// Splits the leaf until every descendant leaf is a singleton or a group of coincident
/// points. Returns the number of splits made.
inline std::size_t fully_divide(const Dataset& d, GBTree& tree, std::size_t node) {
    if (!tree[node].is_leaf()) throw std::invalid_argument("fully_divide expects a leaf");
    std::size_t splits = 0;
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
        const auto id = stack.back();
        stack.pop_back();
        if (tree[id].ball.size() < 2) continue;
        auto halves = split_ball(d, tree[id].ball);
        if (!halves) continue;
        const auto [l, r] = tree.attach_children(id, std::move(halves->first), std::move(halves->second));
        ++splits;
        stack.push_back(r);
        stack.push_back(l);
    }
    return splits;
}

struct Combination {
    std::vector<std::size_t> nodes;
    std::vector<GranularBall> balls;
    double objective{0.0};
};

/// Penalized best combination of the root: the antichain of tree nodes maximizing the
/// sum of Q - lambda, ties resolved toward the coarser node.
inline Combination best_combination(const Dataset& d, const GBTree& tree, const QualityConfig& cfg, double lambda) {
    std::vector<std::array<std::size_t, 2>> children(tree.size());
    std::vector<double> pq(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
        children[i] = tree[i].children;
        pq[i] = penalized_quality(d, tree[i].ball, cfg, lambda);
    }
    auto cut = best_cut(children, pq, tree.root());
    Combination out;
    out.objective = cut.objective;
    out.nodes = std::move(cut.nodes);
    for (const auto id : out.nodes) out.balls.push_back(tree[id].ball);
    return out;
}

/// How the abnormality cut-offs evolve while refining. `fixed` derives them once from the
/// incoming set; `per_round` re-derives them from the live set before each round, which
/// for mean+std rules keeps flagging the widest balls until most are singletons.
enum class RefineStatistics { fixed, per_round };

struct Refinement {
    std::vector<GranularBall> balls;
    std::size_t               rounds{0};
    std::size_t               splits{0};
};

/// Splits every abnormal, splittable ball in rounds until a round makes no split.
inline Refinement refine_anomalies(const Dataset& d, std::vector<GranularBall> balls, AbnormalPolicy policy,
                                   RefineStatistics mode = RefineStatistics::fixed) {
    Refinement out;
    if (balls.empty()) return out;
    const auto limits_of = [policy](const std::vector<GranularBall>& set) {
        std::vector<BallShape> shapes;
        shapes.reserve(set.size());
        for (const auto& b : set) shapes.push_back(shape_of(b));
        return abnormal_thresholds(shapes, policy);
    };
    auto limits = limits_of(balls);

    while (true) {
        if (mode == RefineStatistics::per_round && out.rounds > 0) limits = limits_of(balls);
        std::vector<GranularBall> next;
        next.reserve(balls.size() + 8);
        std::size_t splits = 0;
        for (auto& b : balls) {
            if (b.size() >= 2 && limits.is_abnormal(shape_of(b))) {
                if (auto halves = split_ball(d, b)) {
                    next.push_back(std::move(halves->first));
                    next.push_back(std::move(halves->second));
                    ++splits;
                    continue;
                }
            }
            next.push_back(std::move(b));
        }
        balls = std::move(next);
        if (splits == 0) break;
        ++out.rounds;
        out.splits += splits;
    }
    out.balls = std::move(balls);
    return out;
}

struct GenerationStats {
    std::size_t pre_division_leaves{0};
    std::size_t abnormal_leaves{0};
    std::size_t leaves_after_full_division{0};
    std::size_t combination_size{0};
    std::size_t refine_rounds{0};
    std::size_t refine_splits{0};
    std::size_t constraints_applied{0};
    std::size_t constraints_skipped{0};
    bool        empty_gamma_range{false};
};

struct GenerationOptions {
    AbnormalPolicy        policy{AbnormalPolicy::pojg_plus};
    double                epsilon{1e-6};
    SpecificityForm       specificity_form{SpecificityForm::reciprocal};
    AdaptationRadius      radius_for_adaptation{AdaptationRadius::avg};
    std::optional<double> fixed_gamma;  // skips adaptation when set
    RefineStatistics      refine_statistics{RefineStatistics::fixed};

    /// Called with the live ball set after each stage, for diagnostics and tests.
    std::function<void(std::string_view stage, const std::vector<GranularBall>& balls)> observer;
};

struct GenerationResult {
    std::vector<GranularBall> balls;
    double                    gamma{0.0};
    IntervalSet               gamma_range;
    GBTree                    tree;
    GenerationStats           stats;
};

inline std::vector<GranularBall> leaf_balls(const GBTree& tree) {
    std::vector<GranularBall> out;
    for (const auto id : tree.leaves()) out.push_back(tree[id].ball);
    return out;
}

/// Granular-ball generation: pre-division with granularity adaptation, complete
/// division of abnormal leaves, penalized best combination, and anomaly refinement.
inline GenerationResult generate(const Dataset& d, double lambda, const GenerationOptions& opt = {}) {
    if (d.size() == 0) throw std::invalid_argument("empty dataset");
    if (!(lambda >= 0.0)) throw std::invalid_argument("penalty coefficient must be nonnegative");
    if (!(opt.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    QualityConfig cfg{0.0, opt.specificity_form, opt.radius_for_adaptation};
    auto pre = pre_divide(d, lambda, cfg);
    GenerationStats stats;
    stats.constraints_applied = pre.constraints_applied;
    stats.constraints_skipped = pre.constraints_skipped;

    if (opt.fixed_gamma) {
        cfg.gamma = *opt.fixed_gamma;
    } else {
        const auto choice = finalize_gamma(pre.gamma_range, opt.epsilon);
        cfg.gamma = choice.gamma;
        stats.empty_gamma_range = choice.range_was_empty;
    }

    GBTree tree = std::move(pre.tree);
    const auto notify = [&](std::string_view stage, const std::vector<GranularBall>& balls) {
        if (opt.observer) opt.observer(stage, balls);
    };

    const auto leaves = tree.leaves();
    stats.pre_division_leaves = leaves.size();
    {
        std::vector<BallShape> shapes;
        for (const auto id : leaves) shapes.push_back(shape_of(tree[id].ball));
        if (opt.observer) notify("pre_divide", leaf_balls(tree));
        const auto flags = detect_abnormal(shapes, opt.policy);
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (flags[i]) {
                ++stats.abnormal_leaves;
                fully_divide(d, tree, leaves[i]);
            }
    }
    stats.leaves_after_full_division = tree.leaves().size();
    if (opt.observer) notify("fully_divide", leaf_balls(tree));

    auto combo = best_combination(d, tree, cfg, lambda);
    stats.combination_size = combo.balls.size();
    notify("best_combination", combo.balls);

    auto refined = refine_anomalies(d, std::move(combo.balls), opt.policy, opt.refine_statistics);
    stats.refine_rounds = refined.rounds;
    stats.refine_splits = refined.splits;
    notify("refine_anomalies", refined.balls);

    return GenerationResult{std::move(refined.balls), cfg.gamma, std::move(pre.gamma_range), std::move(tree), stats};
}

}  // namespace lgbqpc
