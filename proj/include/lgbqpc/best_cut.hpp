#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lgbqpc {

struct BestCut {
    std::vector<std::size_t> nodes;       // selected antichain, left-to-right order
    double                   objective{}; // sum of the node values on the cut
};

/// Bottom-up best cut of a binary tree given per-node scores: a leaf keeps its score,
/// an internal node keeps max(own score, best(left) + best(right)). Equal values keep
/// the node itself. `children[i]` is {npos, npos} for leaves; every child id must be
/// larger than its parent id.
inline BestCut best_cut(std::span<const std::array<std::size_t, 2>> children, std::span<const double> score,
                        std::size_t root = 0) {
    constexpr auto npos = static_cast<std::size_t>(-1);
    const std::size_t count = children.size();
    if (score.size() != count) throw std::invalid_argument("score count differs from node count");
    if (root >= count) throw std::invalid_argument("root out of range");

    std::vector<double> best(count, 0.0);
    std::vector<char> keep(count, 1);
    for (std::size_t i = count; i-- > 0;) {
        const auto [l, r] = children[i];
        if (l == npos) {
            best[i] = score[i];
            continue;
        }
        if (l <= i || r <= i) throw std::invalid_argument("child ids must exceed parent ids");
        const double split = best[l] + best[r];
        if (split > score[i]) {
            best[i] = split;
            keep[i] = 0;
        } else {
            best[i] = score[i];
        }
    }

    BestCut out;
    out.objective = best[root];
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
        const auto id = stack.back();
        stack.pop_back();
        if (keep[id]) {
            out.nodes.push_back(id);
        } else {
            stack.push_back(children[id][1]);
            stack.push_back(children[id][0]);
        }
    }
    return out;
}

}  // namespace lgbqpc
