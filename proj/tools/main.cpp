#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using lgbqpc::cli::RunConfig;

void add_common(CLI::App& cmd, RunConfig& cfg, std::optional<std::size_t>& label_column, std::string& policy,
                std::string& variant, std::string& radius, std::string& nmi_norm, std::string& refine) {
    cmd.add_option("--input", cfg.input, "CSV file of numeric features")->required()->check(CLI::ExistingFile);
    cmd.add_flag("--header", cfg.has_header, "first line is a header row");
    cmd.add_option("--label-column", label_column, "0-based column holding ground-truth labels");
    cmd.add_option("--clusters,-c", cfg.clusters, "number of clusters")->capture_default_str();
    cmd.add_option("--lambda", cfg.lambda, "penalty coefficient as a multiple of cbrt(n)")->capture_default_str();
    cmd.add_flag("--absolute-lambda", cfg.absolute_lambda, "read --lambda (and the sweep grid) as absolute values");
    cmd.add_option("--k", cfg.k, "nearest neighbors in the ball graph")->capture_default_str();
    cmd.add_option("--epsilon", cfg.epsilon, "offset above the infimum of the granularity range")->capture_default_str();
    cmd.add_option("--policy", policy, "abnormal-ball rule: pojg_plus, jia, xie_tkde, xie_icde, combined, none")
        ->capture_default_str();
    cmd.add_option("--variant", variant, "full or ablation variant v1..v8")->capture_default_str();
    cmd.add_option("--radius", radius, "radius used when adapting the granularity level: avg or max")
        ->capture_default_str();
    cmd.add_option("--refine-statistics", refine, "abnormal cut-offs while refining: fixed or per_round")
        ->capture_default_str();
    cmd.add_option("--nmi-normalization", nmi_norm, "arithmetic, geometric, min or max")->capture_default_str();
    cmd.add_flag("!--no-standardize", cfg.standardize, "use features as given instead of z-scoring them");
    cmd.add_option("--out,-o", cfg.out, "output directory")->capture_default_str();
}

void add_grid(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--lambda-grid", cfg.lambda_grid, "lambda values (default 0, 0.01, ..., 0.3)")->delimiter(',');
    cmd.add_option("--k-min", cfg.k_min, "smallest k in the grid")->capture_default_str();
    cmd.add_option("--k-max", cfg.k_max, "largest k in the grid")->capture_default_str();
    cmd.add_flag("--select-ari", cfg.select_by_ari, "pick the best cell by ARI instead of NMI");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Granular-ball local quality peaks clustering"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::optional<std::size_t> label_column;
    std::string policy{"pojg_plus"}, variant{"full"}, radius{"avg"}, nmi_norm{"arithmetic"}, refine{"fixed"};

    auto* run = app.add_subcommand("run", "cluster once and write labels, result.json and plot data");
    add_common(*run, cfg, label_column, policy, variant, radius, nmi_norm, refine);
    run->add_flag("--dump-tree", cfg.dump_tree, "also write the division tree as tree.csv");

    auto* sweep = app.add_subcommand("sweep", "grid search over (lambda, k), selecting by NMI");
    add_common(*sweep, cfg, label_column, policy, variant, radius, nmi_norm, refine);
    add_grid(*sweep, cfg);

    auto* ablate = app.add_subcommand("ablate", "compare the full method with variants v1..v8");
    add_common(*ablate, cfg, label_column, policy, variant, radius, nmi_norm, refine);
    add_grid(*ablate, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.label_column = label_column;
        cfg.policy = lgbqpc::parse_policy(policy);
        cfg.variant = lgbqpc::cli::parse_variant(variant);
        if (radius == "avg") cfg.radius = lgbqpc::AdaptationRadius::avg;
        else if (radius == "max") cfg.radius = lgbqpc::AdaptationRadius::max;
        else throw std::invalid_argument("--radius must be avg or max");
        if (refine == "fixed") cfg.refine = lgbqpc::RefineStatistics::fixed;
        else if (refine == "per_round") cfg.refine = lgbqpc::RefineStatistics::per_round;
        else throw std::invalid_argument("--refine-statistics must be fixed or per_round");
        cfg.nmi_norm = lgbqpc::parse_nmi_normalization(nmi_norm);

        if (run->parsed()) {
            const auto out = lgbqpc::cli::run(cfg);
            std::cout << "p=" << out.result.balls.size() << " gamma=" << out.result.gamma;
            if (out.scores) std::cout << " nmi=" << out.scores->nmi << " ari=" << out.scores->ari;
            std::cout << "\nwrote " << cfg.out << '\n';
        } else if (sweep->parsed()) {
            const auto out = lgbqpc::cli::sweep(cfg);
            if (!out.any_ok) {
                std::cerr << "no grid cell produced enough granular balls\n";
                return 1;
            }
            const auto& b = out.cells[out.best];
            std::cout << "best lambda=" << b.lambda << " k=" << b.k << " nmi=" << b.nmi << " ari=" << b.ari
                      << " p=" << b.p << "\nwrote " << cfg.out << '\n';
        } else if (ablate->parsed()) {
            const bool given = ablate->count("--lambda") > 0 || ablate->count("--k") > 0;
            const auto rows = lgbqpc::cli::ablate(cfg, given);
            for (const auto& r : rows)
                std::cout << lgbqpc::cli::to_string(r.variant) << ": "
                          << (r.ok ? "nmi=" + lgbqpc::cli::fmt(r.nmi) + " ari=" + lgbqpc::cli::fmt(r.ari)
                                   : std::string{"too few balls"})
                          << " p=" << r.p << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
