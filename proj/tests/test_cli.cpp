#include "cli.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lgbqpc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("lgbqpc_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f{p, std::ios::binary};
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::size_t line_count(const fs::path& p) {
    const auto text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

fs::path write_dataset(const fs::path& dir, const Dataset& d, bool with_labels) {
    const auto path = dir / (with_labels ? "labeled.csv" : "plain.csv");
    std::ofstream f{path};
    f << "x,y" << (with_labels ? ",class" : "") << '\n';
    for (std::size_t i = 0; i < d.size(); ++i) {
        f << cli::fmt(d(i, 0)) << ',' << cli::fmt(d(i, 1));
        if (with_labels) f << ',' << d.labels()[i];
        f << '\n';
    }
    return path;
}

cli::RunConfig config_for(const fs::path& input, const fs::path& out, bool labels) {
    cli::RunConfig cfg;
    cfg.input = input.string();
    cfg.has_header = true;
    if (labels) cfg.label_column = 2;
    cfg.out = out.string();
    return cfg;
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string{LGBQPC_CLI_PATH} + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(CliRun, WritesAllOutputs) {
    const auto dir = scratch("run");
    const auto input = write_dataset(dir, synthetic::two_moons(50, 0.05, 3), true);
    auto cfg = config_for(input, dir / "out", true);
    cfg.dump_tree = true;
    const auto out = cli::run(cfg);
    ASSERT_TRUE(out.scores);
    for (const char* name : {"labels.csv", "result.json", "balls.csv", "edges.csv", "decision.csv", "tree.csv"})
        EXPECT_TRUE(fs::exists(dir / "out" / name)) << name;

    EXPECT_EQ(line_count(dir / "out" / "labels.csv"), 101u);
    EXPECT_EQ(slurp(dir / "out" / "labels.csv").substr(0, 12), "index,label\n");
    EXPECT_EQ(line_count(dir / "out" / "balls.csv"), out.result.balls.size() + 1);
    EXPECT_EQ(line_count(dir / "out" / "decision.csv"), out.result.balls.size() + 1);

    const auto j = nlohmann::json::parse(slurp(dir / "out" / "result.json"));
    EXPECT_EQ(j["p"], out.result.balls.size());
    EXPECT_DOUBLE_EQ(j["metrics"]["nmi"].get<double>(), out.scores->nmi);
    EXPECT_GE(j["metrics"]["nmi"].get<double>(), 0.0);
    EXPECT_LE(j["metrics"]["nmi"].get<double>(), 100.0);
    EXPECT_TRUE(j["seconds"].contains("geodesic"));
}

TEST(CliRun, WorksWithoutLabels) {
    const auto dir = scratch("nolabels");
    const auto input = write_dataset(dir, synthetic::two_moons(40, 0.05, 4), false);
    const auto out = cli::run(config_for(input, dir / "out", false));
    EXPECT_FALSE(out.scores);
    const auto j = nlohmann::json::parse(slurp(dir / "out" / "result.json"));
    EXPECT_FALSE(j.contains("metrics"));
    EXPECT_TRUE(fs::exists(dir / "out" / "labels.csv"));
    EXPECT_TRUE(fs::exists(dir / "out" / "edges.csv"));
}

TEST(CliRun, RejectsInvalidConfig) {
    cli::RunConfig cfg;
    cfg.clusters = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.epsilon = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.lambda = -1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(CliBinary, TooManyClustersFailsWithBallCount) {
    const auto dir = scratch("toomany");
    const auto input = write_dataset(dir, synthetic::two_moons(30, 0.05, 5), true);
    const auto log = dir / "log.txt";
    const int code = run_cli("run --input " + input.string() + " --header --label-column 2 -c 500 --out " +
                                 (dir / "out").string(),
                             log);
    EXPECT_NE(code, 0);
    EXPECT_NE(slurp(log).find("granular balls were generated"), std::string::npos) << slurp(log);
}

TEST(CliBinary, BadFlagValueFails) {
    const auto dir = scratch("badflag");
    const auto input = write_dataset(dir, synthetic::two_moons(20, 0.05, 5), true);
    EXPECT_NE(run_cli("run --input " + input.string() + " --header --policy nope", dir / "log.txt"), 0);
}

TEST(CliBinary, RunsAreByteIdentical) {
    const auto dir = scratch("determinism");
    const auto input = write_dataset(dir, synthetic::two_spirals(60, 0.1, 8), true);
    const std::string base = "run --input " + input.string() + " --header --label-column 2 --lambda 0.05 --k 4 --out ";
    ASSERT_EQ(run_cli(base + (dir / "a").string(), dir / "a.log"), 0);
    ASSERT_EQ(run_cli(base + (dir / "b").string(), dir / "b.log"), 0);
    for (const char* name : {"labels.csv", "balls.csv", "edges.csv", "decision.csv"})
        EXPECT_EQ(slurp(dir / "a" / name), slurp(dir / "b" / name)) << name;
}

TEST(CliSweep, FullDefaultGrid) {
    const auto dir = scratch("sweep");
    const auto input = write_dataset(dir, synthetic::two_moons(40, 0.05, 6), true);
    const auto out = cli::sweep(config_for(input, dir / "out", true));
    EXPECT_EQ(out.cells.size(), 31u * 20u);
    EXPECT_EQ(line_count(dir / "out" / "grid.csv"), 621u);
    const auto best = nlohmann::json::parse(slurp(dir / "out" / "best.json"));
    ASSERT_TRUE(out.any_ok);
    EXPECT_DOUBLE_EQ(best["best"]["nmi"].get<double>(), out.cells[out.best].nmi);
    for (std::size_t i = 0; i < out.best; ++i)
        if (out.cells[i].ok) EXPECT_LT(out.cells[i].nmi, out.cells[out.best].nmi);
    EXPECT_TRUE(fs::exists(dir / "out" / "labels.csv"));
}

TEST(CliSweep, CustomGridAndAbsoluteLambda) {
    const auto dir = scratch("sweep_custom");
    const auto input = write_dataset(dir, synthetic::two_moons(30, 0.05, 7), true);
    auto cfg = config_for(input, dir / "out", true);
    cfg.lambda_grid = {0.0, 0.5};
    cfg.absolute_lambda = true;
    cfg.k_min = 2;
    cfg.k_max = 4;
    const auto out = cli::sweep(cfg);
    ASSERT_EQ(out.cells.size(), 6u);
    EXPECT_EQ(out.cells[3].lambda, 0.5);
    EXPECT_EQ(out.cells[3].k, 2u);
}

TEST(CliSweep, NeedsLabels) {
    const auto dir = scratch("sweep_nolabels");
    const auto input = write_dataset(dir, synthetic::two_moons(30, 0.05, 7), false);
    EXPECT_THROW(cli::sweep(config_for(input, dir / "out", false)), std::invalid_argument);
}

TEST(CliAblate, OneRowPerVariant) {
    const auto dir = scratch("ablate");
    const auto input = write_dataset(dir, synthetic::two_moons(40, 0.05, 9), true);
    auto cfg = config_for(input, dir / "out", true);
    cfg.lambda = 0.05;
    cfg.k = 5;
    const auto rows = cli::ablate(cfg, true);
    EXPECT_EQ(rows.size(), 9u);
    EXPECT_EQ(line_count(dir / "out" / "ablation.csv"), 10u);
    EXPECT_EQ(rows.front().variant, cli::Variant::full);
}

TEST(CliVariants, MapToSwitches) {
    cli::RunConfig cfg;
    EXPECT_EQ(cli::cluster_options(cfg, cli::Variant::v1, 0, 1).generation.policy, AbnormalPolicy::jia);
    EXPECT_EQ(cli::cluster_options(cfg, cli::Variant::v5, 0, 1).generation.policy, AbnormalPolicy::none);
    EXPECT_EQ(cli::cluster_options(cfg, cli::Variant::v6, 0, 1).density, ClusterOptions::Density::gbdpc_density);
    EXPECT_EQ(cli::cluster_options(cfg, cli::Variant::v7, 0, 1).density, ClusterOptions::Density::raw_quality);
    EXPECT_TRUE(cli::cluster_options(cfg, cli::Variant::v8, 0, 1).euclidean_ball_distance);
    EXPECT_EQ(cli::parse_variant("v3"), cli::Variant::v3);
    EXPECT_THROW(cli::parse_variant("v9"), std::invalid_argument);
}
