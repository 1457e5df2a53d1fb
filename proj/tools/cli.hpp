#pragma once

#include "lgbqpc/lgbqpc.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace lgbqpc::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Ablation variants: v1-v5 swap the abnormal-ball rule, v6/v7 swap the density
/// estimate, v8 swaps geodesic for direct ball distance.
enum class Variant { full, v1, v2, v3, v4, v5, v6, v7, v8 };

inline const std::vector<std::pair<std::string, Variant>>& variant_names() {
    static const std::vector<std::pair<std::string, Variant>> names{
        {"full", Variant::full}, {"v1", Variant::v1}, {"v2", Variant::v2}, {"v3", Variant::v3}, {"v4", Variant::v4},
        {"v5", Variant::v5},     {"v6", Variant::v6}, {"v7", Variant::v7}, {"v8", Variant::v8}};
    return names;
}

inline std::string to_string(Variant v) {
    for (const auto& [name, value] : variant_names())
        if (value == v) return name;
    return "?";
}

inline Variant parse_variant(const std::string& s) {
    for (const auto& [name, value] : variant_names())
        if (name == s) return value;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

struct RunConfig {
    std::string                input;
    bool                       has_header{false};
    std::optional<std::size_t> label_column;
    std::size_t                clusters{2};
    double                     lambda{0.1};  // multiple of cbrt(n) unless absolute_lambda
    bool                       absolute_lambda{false};
    std::size_t                k{5};
    double                     epsilon{1e-6};
    AbnormalPolicy             policy{AbnormalPolicy::pojg_plus};
    Variant                    variant{Variant::full};
    AdaptationRadius           radius{AdaptationRadius::avg};
    RefineStatistics           refine{RefineStatistics::fixed};
    NmiNormalization           nmi_norm{NmiNormalization::arithmetic};
    bool                       standardize{true};
    bool                       dump_tree{false};
    std::string                out{"out"};

    // sweep grid: lambda multipliers (or absolute values) and k range
    std::vector<double> lambda_grid;
    std::size_t         k_min{1};
    std::size_t         k_max{20};
    bool                select_by_ari{false};

    void validate() const {
        if (clusters < 1) throw std::invalid_argument("--clusters must be at least 1");
        if (k < 1 || k_min < 1 || k_max < k_min) throw std::invalid_argument("k must be at least 1");
        if (!(lambda >= 0.0)) throw std::invalid_argument("--lambda must be nonnegative");
        if (!(epsilon > 0.0)) throw std::invalid_argument("--epsilon must be positive");
        for (const double l : lambda_grid)
            if (!(l >= 0.0)) throw std::invalid_argument("lambda grid values must be nonnegative");
    }
};

/// Multipliers 0, 0.01, ..., 0.3 of cbrt(n).
inline std::vector<double> default_lambda_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 30; ++i) g.push_back(i / 100.0);
    return g;
}

inline Dataset load_input(const RunConfig& cfg) {
    auto d = load_csv(cfg.input, cfg.has_header, cfg.label_column);
    return cfg.standardize ? standardize(d) : d;
}

inline double absolute_lambda(const RunConfig& cfg, double value, std::size_t n) {
    return cfg.absolute_lambda ? value : value * std::cbrt(static_cast<double>(n));
}

inline ClusterOptions cluster_options(const RunConfig& cfg, Variant variant, double lambda, std::size_t k) {
    ClusterOptions o;
    o.clusters = cfg.clusters;
    o.lambda = lambda;
    o.k = k;
    o.generation.policy = cfg.policy;
    o.generation.epsilon = cfg.epsilon;
    o.generation.radius_for_adaptation = cfg.radius;
    o.generation.refine_statistics = cfg.refine;
    switch (variant) {
        case Variant::full: break;
        case Variant::v1: o.generation.policy = AbnormalPolicy::jia; break;
        case Variant::v2: o.generation.policy = AbnormalPolicy::xie_tkde; break;
        case Variant::v3: o.generation.policy = AbnormalPolicy::xie_icde; break;
        case Variant::v4: o.generation.policy = AbnormalPolicy::combined; break;
        case Variant::v5: o.generation.policy = AbnormalPolicy::none; break;
        case Variant::v6: o.density = ClusterOptions::Density::gbdpc_density; break;
        case Variant::v7: o.density = ClusterOptions::Density::raw_quality; break;
        case Variant::v8: o.euclidean_ball_distance = true; break;
    }
    return o;
}

inline std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::ofstream open_out(const fs::path& p) {
    std::ofstream f{p, std::ios::binary};
    if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
    return f;
}

struct Scores {
    double nmi{0.0};
    double ari{0.0};
};

inline std::optional<Scores> score(const Dataset& d, const ClusteringResult& r, NmiNormalization norm) {
    if (!d.has_labels()) return std::nullopt;
    return Scores{100.0 * nmi(d.labels(), r.instance_labels, norm), 100.0 * ari(d.labels(), r.instance_labels)};
}

inline void write_labels(const fs::path& dir, const ClusteringResult& r) {
    auto f = open_out(dir / "labels.csv");
    f << "index,label\n";
    for (std::size_t i = 0; i < r.instance_labels.size(); ++i) f << i << ',' << r.instance_labels[i] << '\n';
}

inline void write_plot_files(const fs::path& dir, const ClusteringResult& r) {
    {
        auto f = open_out(dir / "balls.csv");
        const std::size_t m = r.balls.empty() ? 0 : r.balls.front().center.size();
        f << "ball";
        for (std::size_t j = 0; j < m; ++j) f << ",center_" << j;
        f << ",avg_radius,max_radius,size,label\n";
        for (std::size_t b = 0; b < r.balls.size(); ++b) {
            f << b;
            for (const double c : r.balls[b].center) f << ',' << fmt(c);
            f << ',' << fmt(r.balls[b].avg_radius) << ',' << fmt(r.balls[b].max_radius) << ',' << r.balls[b].size()
              << ',' << r.ball_labels[b] << '\n';
        }
    }
    {
        auto f = open_out(dir / "edges.csv");
        f << "source,target,weight\n";
        for (std::size_t i = 0; i < r.graph.out_edges.size(); ++i)
            for (const auto& e : r.graph.out_edges[i]) f << i << ',' << e.target << ',' << fmt(e.weight) << '\n';
    }
    {
        auto f = open_out(dir / "decision.csv");
        f << "ball,quality,relative_quality,relative_geodesic_distance,relative_neighbor,decision_value,center\n";
        std::vector<int> center(r.balls.size(), 0);
        for (const auto c : r.centers) center[c] = 1;
        for (std::size_t b = 0; b < r.balls.size(); ++b)
            f << b << ',' << fmt(r.quality[b]) << ',' << fmt(r.relative_quality[b]) << ','
              << fmt(r.relative_distance[b]) << ',' << r.relative_neighbor[b] << ',' << fmt(r.decision[b]) << ','
              << center[b] << '\n';
    }
}

inline void write_tree(const fs::path& dir, const Dataset& d, const GenerationResult& g, double lambda,
                       const GenerationOptions& opt) {
    auto f = open_out(dir / "tree.csv");
    f << "node,parent,depth,size,avg_radius,max_radius,penalized_quality\n";
    const QualityConfig q{g.gamma, opt.specificity_form, opt.radius_for_adaptation};
    for (std::size_t i = 0; i < g.tree.size(); ++i) {
        const auto& node = g.tree[i];
        f << i << ',' << (node.parent == kNoNode ? std::string{"-1"} : std::to_string(node.parent)) << ','
          << node.depth << ',' << node.ball.size() << ',' << fmt(node.ball.avg_radius) << ','
          << fmt(node.ball.max_radius) << ',' << fmt(penalized_quality(d, node.ball, q, lambda)) << '\n';
    }
}

inline json stats_json(const GenerationStats& s) {
    return json{{"pre_division_leaves", s.pre_division_leaves},
                {"abnormal_leaves", s.abnormal_leaves},
                {"leaves_after_full_division", s.leaves_after_full_division},
                {"combination_size", s.combination_size},
                {"refine_rounds", s.refine_rounds},
                {"refine_splits", s.refine_splits},
                {"gamma_constraints_applied", s.constraints_applied},
                {"gamma_constraints_skipped", s.constraints_skipped},
                {"empty_gamma_range", s.empty_gamma_range}};
}

struct RunOutcome {
    ClusteringResult      result;
    std::optional<Scores> scores;
};

/// Single clustering run; writes labels.csv, result.json, balls.csv, edges.csv,
/// decision.csv (and tree.csv when requested) into cfg.out.
inline RunOutcome run(const RunConfig& cfg) {
    cfg.validate();
    const auto d = load_input(cfg);
    const double lambda = absolute_lambda(cfg, cfg.lambda, d.size());
    const auto opt = cluster_options(cfg, cfg.variant, lambda, cfg.k);

    const auto t0 = std::chrono::steady_clock::now();
    auto gen = generate(d, lambda, opt.generation);
    const double gen_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::create_directories(cfg.out);
    if (cfg.dump_tree) write_tree(cfg.out, d, gen, lambda, opt.generation);

    const auto stats = gen.stats;
    auto res = cluster_balls(d, gen.balls, gen.gamma, opt);
    res.generation_stats = stats;
    res.seconds.generation = gen_seconds;

    write_labels(cfg.out, res);
    write_plot_files(cfg.out, res);

    const auto scores = score(d, res, cfg.nmi_norm);
    json j{{"input", cfg.input},
           {"n", d.size()},
           {"m", d.n_features()},
           {"clusters", cfg.clusters},
           {"variant", to_string(cfg.variant)},
           {"policy", std::string{to_string(opt.generation.policy)}},
           {"refine_statistics", cfg.refine == RefineStatistics::fixed ? "fixed" : "per_round"},
           {"lambda", lambda},
           {"lambda_is_absolute", cfg.absolute_lambda},
           {"lambda_input", cfg.lambda},
           {"k", cfg.k},
           {"k_effective", res.k},
           {"epsilon", cfg.epsilon},
           {"gamma", res.gamma},
           {"p", res.balls.size()},
           {"generation", stats_json(stats)},
           {"seconds",
            {{"generation", res.seconds.generation},
             {"graph", res.seconds.graph},
             {"geodesic", res.seconds.geodesic},
             {"assignment", res.seconds.assignment}}}};
    if (scores) j["metrics"] = {{"nmi", scores->nmi}, {"ari", scores->ari}};
    open_out(fs::path{cfg.out} / "result.json") << j.dump(2) << '\n';
    return {std::move(res), scores};
}

struct GridCell {
    double      lambda_input;
    double      lambda;
    std::size_t k;
    bool        ok{false};
    double      nmi{0.0};
    double      ari{0.0};
    std::size_t p{0};
    double      seconds{0.0};
};

struct SweepOutcome {
    std::vector<GridCell> cells;
    std::size_t           best{0};
    bool                  any_ok{false};
};

/// Evaluates every (lambda, k) cell for one variant. Generation depends only on lambda,
/// so it runs once per grid row.
inline SweepOutcome sweep_grid(const Dataset& d, const RunConfig& cfg, Variant variant) {
    if (!d.has_labels()) throw std::invalid_argument("sweep needs ground-truth labels (--label-column)");
    const auto grid = cfg.lambda_grid.empty() ? default_lambda_grid() : cfg.lambda_grid;

    SweepOutcome out;
    for (const double li : grid) {
        const double lambda = absolute_lambda(cfg, li, d.size());
        const auto base = cluster_options(cfg, variant, lambda, cfg.k_min);
        const auto t0 = std::chrono::steady_clock::now();
        const auto gen = generate(d, lambda, base.generation);
        const double gen_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        for (std::size_t k = cfg.k_min; k <= cfg.k_max; ++k) {
            GridCell cell{li, lambda, k};
            cell.p = gen.balls.size();
            const auto t1 = std::chrono::steady_clock::now();
            if (cell.p >= cfg.clusters) {
                auto opt = base;
                opt.k = k;
                const auto res = cluster_balls(d, gen.balls, gen.gamma, opt);
                const auto s = *score(d, res, cfg.nmi_norm);
                cell.ok = true;
                cell.nmi = s.nmi;
                cell.ari = s.ari;
            }
            cell.seconds = gen_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
            out.cells.push_back(cell);
        }
    }

    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        const auto& c = out.cells[i];
        if (!c.ok) continue;
        const double key = cfg.select_by_ari ? c.ari : c.nmi;
        if (!out.any_ok) {
            out.best = i;
            out.any_ok = true;
            continue;
        }
        const auto& b = out.cells[out.best];
        if (key > (cfg.select_by_ari ? b.ari : b.nmi)) out.best = i;
    }
    return out;
}

/// Grid search; writes grid.csv and best.json, then re-runs the best cell with the full
/// run outputs in cfg.out.
inline SweepOutcome sweep(const RunConfig& cfg) {
    cfg.validate();
    const auto d = load_input(cfg);
    auto out = sweep_grid(d, cfg, cfg.variant);
    fs::create_directories(cfg.out);
    {
        auto f = open_out(fs::path{cfg.out} / "grid.csv");
        f << "lambda,lambda_input,k,nmi,ari,p,seconds,status\n";
        for (const auto& c : out.cells)
            f << fmt(c.lambda) << ',' << fmt(c.lambda_input) << ',' << c.k << ',' << (c.ok ? fmt(c.nmi) : "") << ','
              << (c.ok ? fmt(c.ari) : "") << ',' << c.p << ',' << fmt(c.seconds) << ','
              << (c.ok ? "ok" : "too_few_balls") << '\n';
    }
    json j{{"input", cfg.input}, {"variant", to_string(cfg.variant)}, {"cells", out.cells.size()},
           {"selected_by", cfg.select_by_ari ? "ari" : "nmi"}};
    if (out.any_ok) {
        const auto& b = out.cells[out.best];
        j["best"] = {{"lambda", b.lambda}, {"lambda_input", b.lambda_input}, {"k", b.k},
                     {"nmi", b.nmi},       {"ari", b.ari},                   {"p", b.p}};
        auto best_cfg = cfg;
        best_cfg.lambda = b.lambda_input;
        best_cfg.k = b.k;
        run(best_cfg);
    } else {
        j["best"] = nullptr;
    }
    open_out(fs::path{cfg.out} / "best.json") << j.dump(2) << '\n';
    return out;
}

struct AblationRow {
    Variant     variant;
    bool        ok{false};
    double      nmi{0.0};
    double      ari{0.0};
    std::size_t p{0};
    double      seconds{0.0};
};

/// Runs the full method and v1-v8 at one shared (lambda, k). Without an explicit
/// --lambda/--k the shared setting is the full method's best sweep cell.
inline std::vector<AblationRow> ablate(const RunConfig& cfg, bool use_given_parameters) {
    cfg.validate();
    const auto d = load_input(cfg);
    if (!d.has_labels()) throw std::invalid_argument("ablate needs ground-truth labels (--label-column)");

    double lambda = absolute_lambda(cfg, cfg.lambda, d.size());
    std::size_t k = cfg.k;
    if (!use_given_parameters) {
        const auto s = sweep_grid(d, cfg, Variant::full);
        if (s.any_ok) {
            lambda = s.cells[s.best].lambda;
            k = s.cells[s.best].k;
        }
    }

    std::vector<AblationRow> rows;
    for (const auto& [name, v] : variant_names()) {
        AblationRow row{v};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto res = cluster(d, cluster_options(cfg, v, lambda, k));
            const auto s = *score(d, res, cfg.nmi_norm);
            row.ok = true;
            row.nmi = s.nmi;
            row.ari = s.ari;
            row.p = res.balls.size();
        } catch (const ClusterCountError& e) {
            row.p = e.achieved_balls;
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(row);
    }

    fs::create_directories(cfg.out);
    auto f = open_out(fs::path{cfg.out} / "ablation.csv");
    f << "variant,lambda,k,nmi,ari,p,seconds,status\n";
    for (const auto& r : rows)
        f << to_string(r.variant) << ',' << fmt(lambda) << ',' << k << ',' << (r.ok ? fmt(r.nmi) : "") << ','
          << (r.ok ? fmt(r.ari) : "") << ',' << r.p << ',' << fmt(r.seconds) << ','
          << (r.ok ? "ok" : "too_few_balls") << '\n';
    return rows;
}

}  // namespace lgbqpc::cli
