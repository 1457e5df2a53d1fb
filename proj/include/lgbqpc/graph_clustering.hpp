#pragma once

#include "lgbqpc/generation.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgbqpc {

struct KnnEdge {
    std::size_t target;
    double      weight;
};

/// Directed k-NN structure over granular balls.
struct KnnGraph {
    std::size_t                       k{0};  // effective neighbor count, min(k, p - 1)
    std::vector<std::vector<KnnEdge>> out_edges;

    std::size_t size() const noexcept { return out_edges.size(); }
};

using DistanceMatrix = std::vector<std::vector<double>>;

inline DistanceMatrix ball_distance_matrix(const std::vector<GranularBall>& balls) {
    const std::size_t p = balls.size();
    DistanceMatrix dist(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) dist[i][j] = dist[j][i] = ball_distance(balls[i], balls[j]);
    return dist;
}

/// Each node's k nearest peers under the given distance matrix; ties go to the lower index.
inline KnnGraph build_knn_graph(const DistanceMatrix& dist, std::size_t k) {
    const std::size_t p = dist.size();
    if (p < 2) throw std::invalid_argument("k-NN graph needs at least two balls");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    KnnGraph g;
    g.k = std::min(k, p - 1);
    g.out_edges.resize(p);

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < p; ++i) {
        order.clear();
        for (std::size_t j = 0; j < p; ++j)
            if (j != i) order.push_back(j);
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(g.k), order.end(),
                          [&](std::size_t a, std::size_t b) {
                              if (dist[i][a] != dist[i][b]) return dist[i][a] < dist[i][b];
                              return a < b;
                          });
        for (std::size_t t = 0; t < g.k; ++t) g.out_edges[i].push_back({order[t], dist[i][order[t]]});
    }
    return g;
}

inline KnnGraph build_knn_graph(const std::vector<GranularBall>& balls, std::size_t k) {
    return build_knn_graph(ball_distance_matrix(balls), k);
}

/// A node's value over the mean value of its out-neighbors.
inline std::vector<double> relative_quality(const KnnGraph& g, const std::vector<double>& q) {
    if (q.size() != g.size()) throw std::invalid_argument("one value per graph node required");
    std::vector<double> rq(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto& edges = g.out_edges[i];
        double sum = 0.0;
        for (const auto& e : edges) sum += q[e.target];
        rq[i] = edges.empty() ? 1.0 : q[i] / (sum / static_cast<double>(edges.size()));
    }
    return rq;
}

/// Shortest-path lengths over the k-NN edges taken as undirected, one Dijkstra per
/// source. Unreachable pairs are +inf.
inline DistanceMatrix geodesic_all_pairs(const KnnGraph& g) {
    const std::size_t p = g.size();
    std::vector<std::vector<KnnEdge>> adj(p);
    for (std::size_t i = 0; i < p; ++i)
        for (const auto& e : g.out_edges[i]) {
            if (e.weight < 0.0) throw std::invalid_argument("negative edge weight");
            adj[i].push_back(e);
            adj[e.target].push_back({i, e.weight});
        }

    DistanceMatrix dist(p, std::vector<double>(p, kInf));
    using Entry = std::pair<double, std::size_t>;
    for (std::size_t s = 0; s < p; ++s) {
        auto& d = dist[s];
        d[s] = 0.0;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        heap.push({0.0, s});
        while (!heap.empty()) {
            const auto [du, u] = heap.top();
            heap.pop();
            if (du > d[u]) continue;
            for (const auto& e : adj[u]) {
                const double nd = du + e.weight;
                if (nd < d[e.target]) {
                    d[e.target] = nd;
                    heap.push({nd, e.target});
                }
            }
        }
    }
    // Floating-point sums along a path and its reverse can differ in the last bit.
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) dist[i][j] = dist[j][i] = std::min(dist[i][j], dist[j][i]);
    return dist;
}

struct RelativeGeodesic {
    std::vector<double>      distance;  // D_RG
    std::vector<std::size_t> neighbor;  // N_R (self when no reachable ball ranks higher)
};

/// Distance to, and identity of, the nearest reachable ball with strictly higher relative
/// quality. A ball with none gets its largest finite distance (0 if isolated) and itself.
inline RelativeGeodesic relative_geodesic(const std::vector<double>& rq, const DistanceMatrix& dist) {
    const std::size_t p = rq.size();
    RelativeGeodesic out{std::vector<double>(p, 0.0), std::vector<std::size_t>(p)};
    for (std::size_t i = 0; i < p; ++i) {
        double best = kInf;
        std::size_t arg = i;
        double far = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double dij = dist[i][j];
            if (!std::isfinite(dij)) continue;
            far = std::max(far, dij);
            if (rq[j] > rq[i] && dij < best) {
                best = dij;
                arg = j;
            }
        }
        out.distance[i] = arg == i ? far : best;
        out.neighbor[i] = arg;
    }
    return out;
}

inline std::vector<double> decision_values(const std::vector<double>& rq, const std::vector<double>& drg) {
    std::vector<double> dv(rq.size());
    for (std::size_t i = 0; i < rq.size(); ++i) dv[i] = rq[i] * drg[i];
    return dv;
}

/// Indices sorted by decision value descending, then relative quality descending, then index.
inline std::vector<std::size_t> decision_order(const std::vector<double>& dv, const std::vector<double>& rq) {
    std::vector<std::size_t> order(dv.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dv[a] != dv[b]) return dv[a] > dv[b];
        if (rq[a] != rq[b]) return rq[a] > rq[b];
        return a < b;
    });
    return order;
}

struct LabelAssignment {
    std::vector<int>         ball_labels;  // 1..c
    std::vector<std::size_t> centers;      // center ball index for label j + 1
};

/// Top-c balls by decision value become centers; every other ball follows its relative
/// nearest neighbor chain. A chain ending at a non-center ball with no higher neighbor
/// takes the label of the center nearest to that ball: by `dist` when some center is
/// reachable, otherwise by `fallback`.
inline LabelAssignment assign_labels(const std::vector<double>& dv, const std::vector<double>& rq,
                                     const std::vector<std::size_t>& nr, const DistanceMatrix& dist,
                                     const DistanceMatrix& fallback, std::size_t c) {
    const std::size_t p = dv.size();
    if (c < 1) throw std::invalid_argument("cluster count must be at least 1");
    if (c > p) throw std::invalid_argument("cluster count " + std::to_string(c) + " exceeds ball count " + std::to_string(p));

    LabelAssignment out{std::vector<int>(p, 0), {}};
    const auto order = decision_order(dv, rq);
    for (std::size_t j = 0; j < c; ++j) {
        out.centers.push_back(order[j]);
        out.ball_labels[order[j]] = static_cast<int>(j + 1);
    }

    const auto nearest_center = [&](std::size_t b) {
        const auto pick = [&](const DistanceMatrix& m) {
            std::size_t best = c;
            for (std::size_t j = 0; j < c; ++j) {
                const double v = m[b][out.centers[j]];
                if (std::isfinite(v) && (best == c || v < m[b][out.centers[best]])) best = j;
            }
            return best;
        };
        auto j = pick(dist);
        if (j == c) j = pick(fallback);
        if (j == c) j = 0;
        return static_cast<int>(j + 1);
    };

    std::vector<std::size_t> chain;
    for (std::size_t start = 0; start < p; ++start) {
        std::size_t b = start;
        chain.clear();
        while (out.ball_labels[b] == 0) {
            chain.push_back(b);
            if (nr[b] == b) {
                out.ball_labels[b] = nearest_center(b);
                break;
            }
            if (!(rq[nr[b]] > rq[b])) throw std::logic_error("relative nearest neighbor chain is not increasing");
            b = nr[b];
        }
        const int label = out.ball_labels[b];
        for (const auto v : chain) out.ball_labels[v] = label;
    }
    return out;
}

struct ClusterOptions {
    std::size_t clusters{2};
    double      lambda{0.0};  // absolute penalty coefficient
    std::size_t k{5};
    GenerationOptions generation{};

    enum class Density { relative_quality, gbdpc_density, raw_quality } density{Density::relative_quality};
    bool euclidean_ball_distance{false};  // ball distance replaces geodesic distance downstream
};

struct ClusteringResult {
    std::vector<int>          ball_labels;
    std::vector<int>          instance_labels;
    std::vector<std::size_t>  centers;
    std::vector<GranularBall> balls;
    KnnGraph                  graph;
    std::vector<double>       quality;
    std::vector<double>       relative_quality;
    std::vector<double>       relative_distance;
    std::vector<std::size_t>  relative_neighbor;
    std::vector<double>       decision;
    double                    gamma{0.0};
    double                    lambda{0.0};
    std::size_t               k{0};
    GenerationStats           generation_stats;
    struct Timings {
        double generation{0.0};
        double graph{0.0};
        double geodesic{0.0};
        double assignment{0.0};
    } seconds;
};

class ClusterCountError : public std::runtime_error {
  public:
    ClusterCountError(std::size_t requested, std::size_t achieved)
      : std::runtime_error("requested " + std::to_string(requested) + " clusters but only " +
                           std::to_string(achieved) + " granular balls were generated; try a lower lambda")
      , achieved_balls{achieved} {}
    std::size_t achieved_balls;
};

/// Per-ball density input for the ablation switch. Zero radii make the size/volume
/// density undefined, so they are floored at the smallest positive radius in the set.
inline std::vector<double> gbdpc_densities(const std::vector<GranularBall>& balls) {
    double floor_avg = kInf, floor_max = kInf;
    for (const auto& b : balls) {
        if (b.avg_radius > 0.0) floor_avg = std::min(floor_avg, b.avg_radius);
        if (b.max_radius > 0.0) floor_max = std::min(floor_max, b.max_radius);
    }
    if (!std::isfinite(floor_avg)) floor_avg = 1.0;
    if (!std::isfinite(floor_max)) floor_max = 1.0;
    std::vector<double> out;
    for (auto b : balls) {
        b.avg_radius = std::max(b.avg_radius, floor_avg);
        b.max_radius = std::max(b.max_radius, floor_max);
        out.push_back(gbdpc_density(b));
    }
    return out;
}

/// Local quality peaks clustering of already generated balls.
inline ClusteringResult cluster_balls(const Dataset& d, std::vector<GranularBall> balls, double gamma,
                                      const ClusterOptions& opt) {
    using clock = std::chrono::steady_clock;
    const auto secs = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };
    const std::size_t p = balls.size();
    if (opt.clusters < 1) throw std::invalid_argument("cluster count must be at least 1");
    if (p < opt.clusters) throw ClusterCountError(opt.clusters, p);

    ClusteringResult res;
    res.gamma = gamma;
    res.lambda = opt.lambda;
    const QualityConfig cfg{gamma, opt.generation.specificity_form, opt.generation.radius_for_adaptation};
    for (const auto& b : balls) res.quality.push_back(quality(d, b, cfg));

    if (p == 1) {
        res.k = 0;
        res.graph.out_edges.resize(1);
        res.relative_quality = {1.0};
        res.relative_distance = {0.0};
        res.relative_neighbor = {0};
        res.decision = {0.0};
        res.ball_labels = {1};
        res.centers = {0};
    } else {
        auto t0 = clock::now();
        const auto direct = ball_distance_matrix(balls);
        res.graph = build_knn_graph(direct, opt.k);
        res.k = res.graph.k;
        switch (opt.density) {
            case ClusterOptions::Density::relative_quality:
                res.relative_quality = relative_quality(res.graph, res.quality);
                break;
            case ClusterOptions::Density::gbdpc_density:
                res.relative_quality = relative_quality(res.graph, gbdpc_densities(balls));
                break;
            case ClusterOptions::Density::raw_quality: res.relative_quality = res.quality; break;
        }
        auto t1 = clock::now();
        res.seconds.graph = secs(t0, t1);

        const auto dist = opt.euclidean_ball_distance ? direct : geodesic_all_pairs(res.graph);
        auto t2 = clock::now();
        res.seconds.geodesic = secs(t1, t2);

        auto rg = relative_geodesic(res.relative_quality, dist);
        res.decision = decision_values(res.relative_quality, rg.distance);
        auto labels = assign_labels(res.decision, res.relative_quality, rg.neighbor, dist, direct, opt.clusters);
        res.relative_distance = std::move(rg.distance);
        res.relative_neighbor = std::move(rg.neighbor);
        res.ball_labels = std::move(labels.ball_labels);
        res.centers = std::move(labels.centers);
        res.seconds.assignment = secs(t2, clock::now());
    }

    res.instance_labels.assign(d.size(), 0);
    for (std::size_t b = 0; b < p; ++b)
        for (const auto i : balls[b].members) res.instance_labels[i] = res.ball_labels[b];
    res.balls = std::move(balls);
    return res;
}

/// Generation followed by local quality peaks clustering.
inline ClusteringResult cluster(const Dataset& d, const ClusterOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    auto gen = generate(d, opt.lambda, opt.generation);
    const double gen_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto res = cluster_balls(d, std::move(gen.balls), gen.gamma, opt);
    res.generation_stats = gen.stats;
    res.seconds.generation = gen_seconds;
    return res;
}

}  // namespace lgbqpc
