#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgbqpc {

/// Counts of co-occurring (row class, column class) pairs. Classes are indexed in
/// ascending order of their label values.
struct ContingencyTable {
    std::vector<std::vector<long long>> counts;
    std::vector<long long>              row_sums;
    std::vector<long long>              col_sums;
    long long                           total{0};
};

inline ContingencyTable contingency(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw std::invalid_argument("labelings differ in length");
    if (a.empty()) throw std::invalid_argument("labelings are empty");

    const auto index = [](std::span<const int> v) {
        std::map<int, std::size_t> ids;
        for (const int x : v) ids.emplace(x, 0);
        std::size_t next = 0;
        for (auto& [_, id] : ids) id = next++;
        return ids;
    };
    const auto ra = index(a);
    const auto rb = index(b);

    ContingencyTable t;
    t.counts.assign(ra.size(), std::vector<long long>(rb.size(), 0));
    t.row_sums.assign(ra.size(), 0);
    t.col_sums.assign(rb.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto r = ra.at(a[i]);
        const auto c = rb.at(b[i]);
        ++t.counts[r][c];
        ++t.row_sums[r];
        ++t.col_sums[c];
    }
    t.total = static_cast<long long>(a.size());
    return t;
}

enum class NmiNormalization { arithmetic, geometric, min, max };

inline NmiNormalization parse_nmi_normalization(std::string_view s) {
    if (s == "arithmetic") return NmiNormalization::arithmetic;
    if (s == "geometric") return NmiNormalization::geometric;
    if (s == "min") return NmiNormalization::min;
    if (s == "max") return NmiNormalization::max;
    throw std::invalid_argument("unknown NMI normalization '" + std::string{s} + "'");
}

/// Normalized mutual information in [0, 1] (natural logarithms). Two single-cluster
/// partitions score 1.
inline double nmi(std::span<const int> a, std::span<const int> b,
                  NmiNormalization norm = NmiNormalization::arithmetic) {
    const auto t = contingency(a, b);
    const double n = static_cast<double>(t.total);

    const auto entropy = [n](const std::vector<long long>& sums) {
        double h = 0.0;
        for (const auto s : sums)
            if (s > 0) {
                const double p = static_cast<double>(s) / n;
                h -= p * std::log(p);
            }
        return h;
    };
    const double ha = entropy(t.row_sums);
    const double hb = entropy(t.col_sums);

    double mi = 0.0;
    for (std::size_t i = 0; i < t.counts.size(); ++i)
        for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            const auto nij = t.counts[i][j];
            if (nij == 0) continue;
            const double x = static_cast<double>(nij);
            mi += x / n * std::log(x * n / (static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j])));
        }

    double denom = 0.0;
    switch (norm) {
        case NmiNormalization::arithmetic: denom = 0.5 * (ha + hb); break;
        case NmiNormalization::geometric: denom = std::sqrt(ha * hb); break;
        case NmiNormalization::min: denom = std::min(ha, hb); break;
        case NmiNormalization::max: denom = std::max(ha, hb); break;
    }
    if (ha == 0.0 && hb == 0.0) return 1.0;
    if (denom <= 0.0) return 0.0;
    return std::clamp(mi / denom, 0.0, 1.0);
}

/// Adjusted Rand index over pair counts. When the chance-corrected denominator vanishes
/// the score is 1 for identical partitions and 0 otherwise.
inline double ari(std::span<const int> a, std::span<const int> b) {
    const auto t = contingency(a, b);
    const auto pairs = [](long long x) { return static_cast<double>(x) * static_cast<double>(x - 1) / 2.0; };

    double index = 0.0;
    for (const auto& row : t.counts)
        for (const auto nij : row) index += pairs(nij);
    double sa = 0.0, sb = 0.0;
    for (const auto s : t.row_sums) sa += pairs(s);
    for (const auto s : t.col_sums) sb += pairs(s);

    // scaled by the total pair count so small tables stay in exact integer arithmetic
    const double total = pairs(t.total);
    const double numer = index * total - sa * sb;
    const double denom = 0.5 * (sa + sb) * total - sa * sb;
    if (denom == 0.0) {
        // identical up to relabeling iff every row and column has exactly one nonzero cell
        std::size_t nonzero = 0;
        for (const auto& row : t.counts)
            for (const auto nij : row) nonzero += nij > 0;
        return nonzero == t.row_sums.size() && nonzero == t.col_sums.size() ? 1.0 : 0.0;
    }
    return numer / denom;
}

}  // namespace lgbqpc
