#pragma once

#include "lgbqpc/granular_ball.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace lgbqpc {

inline constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

struct GBTreeNode {
    GranularBall               ball;
    std::size_t                parent{kNoNode};
    std::array<std::size_t, 2> children{kNoNode, kNoNode};
    std::size_t                depth{0};

    bool is_leaf() const noexcept { return children[0] == kNoNode; }
};

/// Binary division tree stored as an arena; node 0 is the root.
class GBTree {
  public:
    explicit GBTree(GranularBall root) { nodes_.push_back(GBTreeNode{std::move(root), kNoNode, {kNoNode, kNoNode}, 0}); }

    std::size_t root() const noexcept { return 0; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const GBTreeNode& operator[](std::size_t id) const { return nodes_.at(id); }

    std::pair<std::size_t, std::size_t> attach_children(std::size_t parent, GranularBall left, GranularBall right) {
        const std::size_t depth = nodes_.at(parent).depth + 1;
        const std::size_t l = nodes_.size();
        nodes_.push_back(GBTreeNode{std::move(left), parent, {kNoNode, kNoNode}, depth});
        const std::size_t r = nodes_.size();
        nodes_.push_back(GBTreeNode{std::move(right), parent, {kNoNode, kNoNode}, depth});
        nodes_[parent].children = {l, r};
        return {l, r};
    }

    std::vector<std::size_t> leaves() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].is_leaf()) out.push_back(i);
        return out;
    }

    /// Children always follow their parent in the arena, so reverse id order visits
    /// every node after both of its children.
    template <typename Visit>
    void bottom_up(Visit&& visit) const {
        for (std::size_t i = nodes_.size(); i-- > 0;) visit(i);
    }

  private:
    std::vector<GBTreeNode> nodes_;
};

}  // namespace lgbqpc
