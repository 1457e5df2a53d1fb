#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace lgbqpc;

namespace {

Dataset line(std::vector<double> xs) { return Dataset{std::move(xs), 1}; }

std::vector<GranularBall> singletons(const Dataset& d) {
    std::vector<GranularBall> balls;
    for (std::size_t i = 0; i < d.size(); ++i) balls.push_back(make_ball(d, {i}));
    return balls;
}

KnnGraph undirected(std::size_t p, std::initializer_list<std::tuple<std::size_t, std::size_t, double>> edges) {
    KnnGraph g;
    g.out_edges.resize(p);
    for (const auto& [a, b, w] : edges) g.out_edges[a].push_back({b, w});
    return g;
}

std::vector<std::size_t> targets(const KnnGraph& g, std::size_t i) {
    std::vector<std::size_t> t;
    for (const auto& e : g.out_edges[i]) t.push_back(e.target);
    return t;
}

const DistanceMatrix& no_fallback() {
    static const DistanceMatrix empty;
    return empty;
}

}  // namespace

// ---- k-NN graph ---------------------------------------------------------------------------------

TEST(KnnGraph, ThreePointsOnALine) {
    const auto g = build_knn_graph(singletons(line({0, 1, 5})), 1);
    EXPECT_EQ(targets(g, 0), std::vector<std::size_t>{1});
    EXPECT_EQ(targets(g, 1), std::vector<std::size_t>{0});
    EXPECT_EQ(targets(g, 2), std::vector<std::size_t>{1});
    EXPECT_DOUBLE_EQ(g.out_edges[2][0].weight, 4.0);
}

TEST(KnnGraph, ClampsToCompleteGraph) {
    const auto g = build_knn_graph(singletons(line({0, 1, 5, 9})), 50);
    EXPECT_EQ(g.k, 3u);
    for (std::size_t i = 0; i < 4; ++i) {
        auto t = targets(g, i);
        EXPECT_EQ(t.size(), 3u);
        EXPECT_EQ(std::count(t.begin(), t.end(), i), 0);
    }
}

TEST(KnnGraph, TiesGoToLowerIndex) {
    const auto g = build_knn_graph(singletons(line({0, -2, 2})), 1);
    EXPECT_EQ(targets(g, 0), std::vector<std::size_t>{1});
}

TEST(KnnGraph, Errors) {
    EXPECT_THROW(build_knn_graph(singletons(line({0})), 1), std::invalid_argument);
    EXPECT_THROW(build_knn_graph(singletons(line({0, 1})), 0), std::invalid_argument);
}

TEST(KnnGraphProperty, DegreesAndWeights) {
    synthetic::Rng rng{3};
    const auto d = oracle::random_dataset(rng, 40, 2);
    std::vector<GranularBall> balls;
    for (std::size_t i = 0; i < 40; i += 2) balls.push_back(make_ball(d, {i, i + 1}));
    for (std::size_t k = 1; k < 25; k += 3) {
        const auto g = build_knn_graph(balls, k);
        for (std::size_t i = 0; i < balls.size(); ++i) {
            EXPECT_EQ(g.out_edges[i].size(), std::min(k, balls.size() - 1));
            double last = 0.0;
            for (const auto& e : g.out_edges[i]) {
                EXPECT_NE(e.target, i);
                EXPECT_EQ(e.weight, ball_distance(balls[i], balls[e.target]));
                EXPECT_GE(e.weight, last);
                last = e.weight;
            }
        }
    }
}

// ---- relative quality ---------------------------------------------------------------------------

TEST(RelativeQuality, Examples) {
    const auto g = undirected(5, {{0, 1, 1.0}, {0, 2, 1.0}, {3, 4, 1.0}, {3, 1, 1.0}, {1, 0, 1.0}, {2, 0, 1.0}, {4, 3, 1.0}});
    const auto rq = relative_quality(g, {2, 1, 3, 4, 1});
    EXPECT_DOUBLE_EQ(rq[0], 1.0);  // 2 / mean(1, 3)
    EXPECT_DOUBLE_EQ(rq[3], 4.0);  // 4 / mean(1, 1)
    EXPECT_DOUBLE_EQ(rq[4], 0.25);
    const auto flat = relative_quality(g, {7, 7, 7, 7, 7});
    for (const double v : flat) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(RelativeQualityProperty, ScaleInvariance) {
    synthetic::Rng rng{5};
    for (int t = 0; t < 50; ++t) {
        const auto d = oracle::random_dataset(rng, 30, 2);
        const auto g = build_knn_graph(singletons(d), 1 + rng.index(8));
        std::vector<double> q(30), q4(30), q3(30);
        for (std::size_t i = 0; i < 30; ++i) {
            q[i] = rng.uniform(0.1, 5);
            q4[i] = 4.0 * q[i];  // exact in binary
            q3[i] = 3.0 * q[i];
        }
        const auto rq = relative_quality(g, q), rq4 = relative_quality(g, q4), rq3 = relative_quality(g, q3);
        EXPECT_EQ(rq, rq4);
        for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(rq3[i], rq[i], 1e-12 * rq[i]);
        const auto dist = geodesic_all_pairs(g);
        const auto a = relative_geodesic(rq, dist), b = relative_geodesic(rq4, dist);
        EXPECT_EQ(decision_order(decision_values(rq, a.distance), rq),
                  decision_order(decision_values(rq4, b.distance), rq4));
    }
}

// ---- geodesics ------------------------------------------------------------------------------------

TEST(Geodesic, PathAdds) {
    const auto d = geodesic_all_pairs(undirected(3, {{0, 1, 1.0}, {2, 1, 2.0}}));
    EXPECT_EQ(d[0][2], 3.0);
    EXPECT_EQ(d[2][0], 3.0);
}

TEST(Geodesic, DisconnectedIsInfinite) {
    const auto d = geodesic_all_pairs(undirected(4, {{0, 1, 1.0}, {2, 3, 1.0}}));
    EXPECT_EQ(d[0][2], kInf);
    EXPECT_EQ(d[3][1], kInf);
    EXPECT_EQ(d[2][2], 0.0);
}

TEST(GeodesicProperty, SmallRandomGraphsMatchFloydWarshall) {
    synthetic::Rng rng{7};
    for (int t = 0; t < 30; ++t) {
        const std::size_t p = 2 + rng.index(20);
        KnnGraph g;
        g.out_edges.resize(p);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
                if (i != j && rng.uniform() < 0.1) g.out_edges[i].push_back({j, rng.uniform(0, 3)});
        const auto got = geodesic_all_pairs(g);
        const auto want = oracle::floyd_warshall(g);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                EXPECT_EQ(std::isinf(got[i][j]), std::isinf(want[i][j]));
                if (std::isfinite(want[i][j])) EXPECT_NEAR(got[i][j], want[i][j], 1e-9);
                EXPECT_EQ(got[i][j], got[j][i]);
                for (std::size_t k = 0; k < p; ++k)
                    if (std::isfinite(got[i][k]) && std::isfinite(got[k][j]))
                        EXPECT_LE(got[i][j], got[i][k] + got[k][j] + 1e-12);
            }
    }
}

TEST(GeodesicProperty, ConvexPositionSingletonsKeepEuclideanDistance) {
    // points on a circle: every chord is shorter than any detour along other chords
    std::vector<double> v;
    for (int i = 0; i < 12; ++i) {
        const double a = 2 * std::numbers::pi * i / 12;
        v.insert(v.end(), {std::cos(a), std::sin(a)});
    }
    const Dataset d{v, 2};
    const auto balls = singletons(d);
    const auto geo = geodesic_all_pairs(build_knn_graph(balls, 11));
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) EXPECT_NEAR(geo[i][j], euclidean(d.row(i), d.row(j)), 1e-12);
}

// ---- relative geodesic, decision values ---------------------------------------------------------

TEST(RelativeGeodesic, UniqueMaximumUsesEccentricity) {
    const auto dist = geodesic_all_pairs(undirected(3, {{0, 1, 1.0}, {1, 2, 2.0}}));
    const auto rg = relative_geodesic({1.0, 3.0, 2.0}, dist);
    EXPECT_EQ(rg.neighbor[1], 1u);
    EXPECT_EQ(rg.distance[1], 2.0);
    EXPECT_EQ(rg.neighbor[0], 1u);
    EXPECT_EQ(rg.distance[0], 1.0);
    EXPECT_EQ(rg.neighbor[2], 1u);
}

TEST(RelativeGeodesic, TwoBalls) {
    const auto dist = geodesic_all_pairs(undirected(2, {{0, 1, 4.0}}));
    const auto rg = relative_geodesic({1.0, 2.0}, dist);
    EXPECT_EQ(rg.distance[0], 4.0);
    EXPECT_EQ(rg.neighbor[0], 1u);
}

TEST(RelativeGeodesic, EachComponentHasItsOwnPeak) {
    const auto dist = geodesic_all_pairs(undirected(4, {{0, 1, 1.0}, {2, 3, 1.5}}));
    const auto rg = relative_geodesic({1.0, 2.0, 5.0, 0.5}, dist);
    EXPECT_EQ(rg.neighbor[1], 1u);
    EXPECT_EQ(rg.neighbor[2], 2u);
    EXPECT_EQ(rg.neighbor[0], 1u);
    EXPECT_EQ(rg.neighbor[3], 2u);
    EXPECT_EQ(rg.distance[1], 1.0);
    EXPECT_EQ(rg.distance[2], 1.5);
}

TEST(RelativeGeodesic, IsolatedBall) {
    const auto dist = geodesic_all_pairs(undirected(2, {}));
    const auto rg = relative_geodesic({1.0, 1.0}, dist);
    EXPECT_EQ(rg.distance[0], 0.0);
    EXPECT_EQ(rg.neighbor[0], 0u);
}

TEST(RelativeGeodesic, TiesGoToLowerIndex) {
    const auto dist = geodesic_all_pairs(undirected(3, {{0, 1, 1.0}, {0, 2, 1.0}}));
    EXPECT_EQ(relative_geodesic({1.0, 2.0, 2.0}, dist).neighbor[0], 1u);
}

TEST(DecisionValues, Examples) {
    EXPECT_EQ(decision_values({1.5, 2.0}, {2.0, 0.0}), (std::vector<double>{3.0, 0.0}));
    EXPECT_EQ(decision_order({1, 3, 3, 0}, {1, 1, 2, 5}), (std::vector<std::size_t>{2, 1, 0, 3}));
}

// ---- labels -----------------------------------------------------------------------------------------

TEST(AssignLabels, EveryBallACenter) {
    const DistanceMatrix dist{{0, 1}, {1, 0}};
    const auto a = assign_labels({1, 2}, {1, 2}, {1, 1}, dist, dist, 2);
    EXPECT_EQ(a.centers, (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(a.ball_labels, (std::vector<int>{2, 1}));
}

TEST(AssignLabels, ChainsResolveToTheirCenter) {
    // 0 -> 1 -> 2 (center), 3 is a second center
    const DistanceMatrix dist(4, std::vector<double>(4, 1.0));
    const auto a = assign_labels({0.1, 0.2, 9, 8}, {1, 2, 3, 4}, {1, 2, 2, 3}, dist, dist, 2);
    EXPECT_EQ(a.centers, (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(a.ball_labels, (std::vector<int>{1, 1, 1, 2}));
}

TEST(AssignLabels, SelfReferentialNonCenterJoinsNearestCenter) {
    const DistanceMatrix dist{{0, 1, 5}, {1, 0, 4}, {5, 4, 0}};
    // ball 1 has no higher neighbor but ranks below both centers
    const auto a = assign_labels({10, 0.5, 9}, {3, 2, 4}, {0, 1, 2}, dist, dist, 2);
    EXPECT_EQ(a.ball_labels[1], a.ball_labels[0]);
}

TEST(AssignLabels, FallbackDistanceWhenNoCenterIsReachable) {
    const DistanceMatrix geo{{0, kInf, kInf}, {kInf, 0, kInf}, {kInf, kInf, 0}};
    const DistanceMatrix direct{{0, 3, 1}, {3, 0, 2}, {1, 2, 0}};
    const auto a = assign_labels({5, 4, 1}, {1, 1, 1}, {0, 1, 2}, geo, direct, 2);
    EXPECT_EQ(a.ball_labels[2], a.ball_labels[0]);
}

TEST(AssignLabels, Errors) {
    const DistanceMatrix dist{{0}};
    EXPECT_THROW(assign_labels({1}, {1}, {0}, dist, dist, 2), std::invalid_argument);
    EXPECT_THROW(assign_labels({1}, {1}, {0}, dist, dist, 0), std::invalid_argument);
}

TEST(AssignLabels, TwoComponentsBecomeTwoClusters) {
    const auto geo = geodesic_all_pairs(undirected(6, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}}));
    const std::vector<double> rq{1, 3, 2, 2, 5, 1};
    const auto rg = relative_geodesic(rq, geo);
    const auto a = assign_labels(decision_values(rq, rg.distance), rq, rg.neighbor, geo, no_fallback(), 2);
    EXPECT_EQ(a.ball_labels[0], a.ball_labels[1]);
    EXPECT_EQ(a.ball_labels[1], a.ball_labels[2]);
    EXPECT_EQ(a.ball_labels[3], a.ball_labels[4]);
    EXPECT_EQ(a.ball_labels[4], a.ball_labels[5]);
    EXPECT_NE(a.ball_labels[0], a.ball_labels[3]);
}

// ---- end to end ---------------------------------------------------------------------------------

TEST(Cluster, SingleClusterLabelsEverything) {
    synthetic::Rng rng{9};
    const auto d = standardize(oracle::random_dataset(rng, 80, 2));
    ClusterOptions opt;
    opt.clusters = 1;
    const auto r = cluster(d, opt);
    for (const int l : r.instance_labels) EXPECT_EQ(l, 1);
}

TEST(Cluster, TooFewBallsReportsAchievedCount) {
    const auto d = standardize(synthetic::two_moons(40, 0.05, 1));
    ClusterOptions opt;
    opt.clusters = 2;
    opt.lambda = 1e6;
    try {
        cluster(d, opt);
        FAIL() << "expected ClusterCountError";
    } catch (const ClusterCountError& e) {
        EXPECT_EQ(e.achieved_balls, 1u);
        EXPECT_NE(std::string{e.what()}.find("only 1"), std::string::npos);
    }
}

TEST(Cluster, ResultInvariants) {
    synthetic::Rng rng{11};
    for (int t = 0; t < 10; ++t) {
        const auto d = standardize(oracle::random_dataset(rng, 30 + rng.index(200), 1 + rng.index(4)));
        ClusterOptions opt;
        opt.clusters = 1 + rng.index(4);
        opt.k = 1 + rng.index(10);
        opt.lambda = rng.uniform(0, 0.5);
        ClusteringResult r;
        try {
            r = cluster(d, opt);
        } catch (const ClusterCountError&) {
            continue;
        }
        const std::set<int> labels(r.ball_labels.begin(), r.ball_labels.end());
        EXPECT_EQ(labels.size(), opt.clusters);
        EXPECT_EQ(r.centers.size(), opt.clusters);
        for (std::size_t b = 0; b < r.balls.size(); ++b)
            for (const auto i : r.balls[b].members) EXPECT_EQ(r.instance_labels[i], r.ball_labels[b]);
        for (std::size_t b = 0; b < r.balls.size(); ++b) {
            // chains climb strictly in relative quality until a self-loop
            std::size_t v = b, steps = 0;
            while (r.relative_neighbor[v] != v) {
                EXPECT_GT(r.relative_quality[r.relative_neighbor[v]], r.relative_quality[v]);
                v = r.relative_neighbor[v];
                ASSERT_LT(++steps, r.balls.size());
            }
        }
    }
}

TEST(Cluster, VariantsRun) {
    const auto d = standardize(synthetic::two_moons(60, 0.05, 2));
    for (const auto density : {ClusterOptions::Density::gbdpc_density, ClusterOptions::Density::raw_quality}) {
        ClusterOptions opt;
        opt.lambda = 0.1;
        opt.density = density;
        EXPECT_EQ(cluster(d, opt).instance_labels.size(), d.size());
    }
    ClusterOptions opt;
    opt.lambda = 0.1;
    opt.euclidean_ball_distance = true;
    EXPECT_EQ(cluster(d, opt).instance_labels.size(), d.size());
}

TEST(GbdpcDensities, FloorZeroRadii) {
    const auto d = line({0, 0, 5, 7});
    const std::vector<GranularBall> balls{make_ball(d, {0, 1}), make_ball(d, {2, 3})};
    const auto rho = gbdpc_densities(balls);
    EXPECT_DOUBLE_EQ(rho[1], 2.0 / (1.0 * 1.0 * 1.0));
    EXPECT_DOUBLE_EQ(rho[0], rho[1]);
}
