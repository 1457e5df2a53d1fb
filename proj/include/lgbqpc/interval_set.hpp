#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace lgbqpc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo{0.0};
    double hi{kInf};
    bool   lo_closed{true};
    bool   hi_closed{false};  // always false when hi is infinite

    bool empty() const noexcept { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
    bool contains(double x) const noexcept {
        return (lo < x || (lo_closed && lo == x)) && (x < hi || (hi_closed && hi == x));
    }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint sub-intervals of [0, +inf), kept sorted and maximal: no two
/// stored intervals overlap or touch in a way that would let them merge.
class IntervalSet {
  public:
    IntervalSet() = default;

    explicit IntervalSet(std::vector<Interval> parts) {
        for (auto& iv : parts) {
            if (iv.lo < 0.0) {
                iv.lo = 0.0;
                iv.lo_closed = true;
            }
            if (std::isinf(iv.hi)) iv.hi_closed = false;
            if (!iv.empty()) intervals_.push_back(iv);
        }
        normalize();
    }

    static IntervalSet half_line() { return IntervalSet{{Interval{}}}; }
    static IntervalSet open(double lo, double hi) { return IntervalSet{{Interval{lo, hi, false, false}}}; }

    bool empty() const noexcept { return intervals_.empty(); }
    const std::vector<Interval>& intervals() const noexcept { return intervals_; }

    bool contains(double x) const noexcept {
        return std::any_of(intervals_.begin(), intervals_.end(), [x](const Interval& iv) { return iv.contains(x); });
    }

    double infimum() const noexcept { return empty() ? kInf : intervals_.front().lo; }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

    friend std::ostream& operator<<(std::ostream& os, const IntervalSet& s) {
        if (s.empty()) return os << "{}";
        for (std::size_t i = 0; i < s.intervals_.size(); ++i) {
            const auto& iv = s.intervals_[i];
            if (i) os << " U ";
            os << (iv.lo_closed ? '[' : '(') << iv.lo << ", " << iv.hi << (iv.hi_closed ? ']' : ')');
        }
        return os;
    }

  private:
    void normalize() {
        std::sort(intervals_.begin(), intervals_.end(), [](const Interval& a, const Interval& b) {
            if (a.lo != b.lo) return a.lo < b.lo;
            return a.lo_closed && !b.lo_closed;
        });
        std::vector<Interval> merged;
        for (const auto& iv : intervals_) {
            if (!merged.empty()) {
                auto& last = merged.back();
                const bool joins = iv.lo < last.hi || (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
                if (joins) {
                    if (iv.hi > last.hi) {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    } else if (iv.hi == last.hi) {
                        last.hi_closed = last.hi_closed || iv.hi_closed;
                    }
                    continue;
                }
            }
            merged.push_back(iv);
        }
        intervals_ = std::move(merged);
    }

    std::vector<Interval> intervals_;
};

inline Interval intersect(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
    } else {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed && b.hi_closed;
    }
    return r;
}

inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> parts;
    for (const auto& x : a.intervals())
        for (const auto& y : b.intervals()) {
            auto r = intersect(x, y);
            if (!r.empty()) parts.push_back(r);
        }
    return IntervalSet{std::move(parts)};
}

struct GammaChoice {
    double gamma{0.0};
    bool   range_was_empty{false};
};

/// Picks a point just above the infimum of the feasible range. The offset is halved
/// while it overshoots the first interval; if the first interval is too thin even for
/// that, the next interval is tried.
inline GammaChoice finalize_gamma(const IntervalSet& range, double epsilon) {
    if (range.empty()) return {0.0, true};

    for (const auto& iv : range.intervals()) {
        double eps = epsilon;
        while (eps >= 1e-15) {
            const double g = iv.lo + eps;
            if (iv.contains(g)) return {g, false};
            eps *= 0.5;
        }
        if (iv.lo_closed) return {iv.lo, false};
    }
    return {range.infimum() + epsilon, false};
}

}  // namespace lgbqpc
