#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <unistd.h>

#include "designworld/experiment.hpp"

using namespace designworld;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small(int runs = 4, std::vector<double> radii = {1, 16}) {
    ExperimentConfig c;
    c.runs = runs;
    c.radii = std::move(radii);
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("designworld_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Config, DefaultSweepIsEighteenHundredDialogues) {
    const ExperimentConfig c;
    EXPECT_EQ(c.radii.size() * 2 * static_cast<std::size_t>(c.runs), 1800u);
    EXPECT_EQ(c.first.name(), "explicit-warrant");
    EXPECT_EQ(c.second.name(), "all-implicit");
}

TEST(Config, ParsesCommentsAndWhitespace) {
    const auto c = parse_config("# comment\n\n  commcost =  10   # trailing\nradii=1, 4,16\ntask = znmb\nruns = 7\n",
                                ExperimentConfig{});
    EXPECT_EQ(c.costs.commcost, 10.0);
    EXPECT_EQ(c.radii, (std::vector<double>{1, 4, 16}));
    EXPECT_EQ(c.task, TaskKind::ZeroNonMatchingBeliefs);
    EXPECT_EQ(c.runs, 7);
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("bogus = 1\n", {}), ConfigError);
    EXPECT_THROW(parse_config("commcost 1\n", {}), ConfigError);
    EXPECT_THROW(parse_config("commcost = abc\n", {}), ConfigError);
    EXPECT_THROW(parse_config("strategy1 = cautious\n", {}), ConfigError);
    EXPECT_THROW(parse_config("runs = 1\n", {}).validate(), ConfigError);
    EXPECT_THROW(parse_config("radii = 1,1\n", {}).validate(), ConfigError);
    EXPECT_THROW(parse_config("radii = 17\n", {}).validate(), ConfigError);
    EXPECT_THROW(parse_config("commcost = -1\n", {}).validate(), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/designworld.conf", {}), ConfigError);
}

TEST(Config, CanonicalRoundTrips) {
    ExperimentConfig c;
    c.costs = {10, 0, 0.5};
    c.radii = {2, 3};
    c.agent.infer_counter_floor = false;
    c.paired = false;
    const auto back = parse_config(c.canonical(), ExperimentConfig{});
    EXPECT_EQ(back.canonical(), c.canonical());
    EXPECT_EQ(back.hash(), c.hash());
    EXPECT_NE(ExperimentConfig{}.hash(), c.hash());
}

TEST(Config, FrozenFileMatchesBuiltInDefaults) {
    const ExperimentConfig builtin;
    const auto frozen = load_config(fs::path(DESIGNWORLD_SOURCE_DIR) / "configs" / "default.conf", ExperimentConfig{});
    EXPECT_EQ(frozen.canonical(), builtin.canonical());
}

TEST(Config, MasterSeedFromEnvironment) {
    ::setenv("DESIGNWORLD_SEED", "4242", 1);
    EXPECT_EQ(default_experiment().seed, 4242u);
    ::unsetenv("DESIGNWORLD_SEED");
    EXPECT_EQ(default_experiment().seed, 1994u);
}

TEST(Config, Presets) {
    const auto f3 = replication_preset("figure3", {});
    EXPECT_EQ(f3.costs.commcost, 1.0);
    EXPECT_EQ(f3.costs.infcost, 1.0);
    EXPECT_EQ(f3.costs.retcost, 0.0);
    EXPECT_EQ(replication_preset("figure4", {}).costs.retcost, 0.01);
    const auto f5 = replication_preset("figure5", {});
    EXPECT_EQ(f5.costs.commcost, 10.0);
    EXPECT_EQ(f5.task, TaskKind::Standard);
    EXPECT_EQ(replication_preset("figure6", {}).task, TaskKind::ZeroNonMatchingBeliefs);
    EXPECT_THROW(replication_preset("figure7", {}), ConfigError);
    EXPECT_EQ(replication_names().size(), 4u);
}

TEST(Config, StrategyPairs) {
    EXPECT_EQ(StrategyPair::parse("all-implicit"), (StrategyPair{Strategy::AllImplicit, Strategy::AllImplicit}));
    const auto mixed = StrategyPair::parse("explicit-warrant:all-implicit");
    EXPECT_EQ(mixed, (StrategyPair{Strategy::ExplicitWarrant, Strategy::AllImplicit}));
    EXPECT_EQ(StrategyPair::parse(mixed.name()), mixed);
}

TEST(Seeds, PairedArmsShareWorldsAndDialogues) {
    ExperimentConfig c;
    std::set<std::uint64_t> worlds;
    for (int run = 0; run < 50; ++run) {
        EXPECT_EQ(world_seed_for(c, 0, run), world_seed_for(c, 1, run));
        EXPECT_EQ(dialogue_seed_for(c, 3, 0, run), dialogue_seed_for(c, 3, 1, run));
        worlds.insert(world_seed_for(c, 0, run));
    }
    EXPECT_EQ(worlds.size(), 50u);
    c.paired = false;
    EXPECT_NE(world_seed_for(c, 0, 0), world_seed_for(c, 1, 0));
    EXPECT_NE(dialogue_seed_for(c, 3, 0, 0), dialogue_seed_for(c, 3, 1, 0));
}

TEST(Sweep, CountsAndOrder) {
    const auto s = run_sweep(small(2, {16, 1}));
    ASSERT_EQ(s.runs.size(), 8u);
    EXPECT_EQ(s.runs.front().radius, 1.0);
    EXPECT_EQ(s.runs.back().radius, 16.0);
    EXPECT_EQ(s.samples.size(), 2u);
    EXPECT_EQ(s.samples[0].radius, 1.0);
    EXPECT_EQ(s.samples[0].first.size(), 2u);
    EXPECT_EQ(lines(render_runs_csv(s)), 1u + 8u);
    EXPECT_EQ(s.classification.support.size(), 2u);
}

TEST(Sweep, PairedArmsUseSameWorld) {
    const auto s = run_sweep(small(5, {16}));
    for (int run = 0; run < 5; ++run) {
        const auto& a = s.runs[static_cast<std::size_t>(run)];
        const auto& b = s.runs[static_cast<std::size_t>(run + 5)];
        EXPECT_EQ(a.arm, 0);
        EXPECT_EQ(b.arm, 1);
        EXPECT_EQ(a.world_seed, b.world_seed);
        EXPECT_EQ(a.dialogue_seed, b.dialogue_seed);
    }
}

TEST(Sweep, Deterministic) {
    const auto c = small(6, {1, 4, 16});
    const auto a = run_sweep(c);
    const auto b = run_sweep(c);
    EXPECT_EQ(render_runs_csv(a), render_runs_csv(b));
    EXPECT_EQ(render_summary_csv(a, "# p"), render_summary_csv(b, "# p"));
    EXPECT_EQ(render_difference_svg(a), render_difference_svg(b));
    EXPECT_EQ(render_verdict(a, "# p"), render_verdict(b, "# p"));
    auto other = c;
    other.seed = c.seed + 1;
    EXPECT_NE(render_runs_csv(run_sweep(other)), render_runs_csv(a));
}

TEST(Sweep, DifferencesMatchSamples) {
    const auto s = run_sweep(small(6, {2, 8}));
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        EXPECT_DOUBLE_EQ(s.differences[i].difference, mean(s.samples[i].first) - mean(s.samples[i].second));
    }
}

TEST(Reports, AllZeroDifferencesSitOnZeroLine) {
    SweepSummary s;
    for (double r : {1.0, 4.0, 16.0}) {
        s.samples.push_back({r, {5, 6}, {5, 6}});
    }
    s.classification = classify(s.samples);
    s.differences = difference_series(s.samples);
    const auto svg = render_difference_svg(s);
    const std::regex zero_re("class=\"zero\" x1=\"[0-9.]+\" y1=\"([0-9.]+)\"");
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, zero_re));
    const std::string zero_y = m[1];
    const std::regex circle_re("<circle cx=\"[0-9.]+\" cy=\"([0-9.]+)\"");
    int circles = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle_re); it != std::sregex_iterator(); ++it) {
        EXPECT_EQ((*it)[1].str(), zero_y);
        ++circles;
    }
    EXPECT_EQ(circles, 3);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Reports, VerdictNamesSignificantRadii) {
    SweepSummary s;
    s.config = replication_preset("figure5", {});
    s.classification.verdict = Verdict::Detrimental;
    for (double r : {1.0, 3.0, 16.0}) {
        RadiusComparison c;
        c.radius = r;
        c.ks.p_value = r == 3.0 ? 0.5 : 0.001;
        c.direction = -1;
        c.mean_difference = -20;
        s.classification.support.push_back(c);
    }
    const auto text = render_verdict(s, "# provenance: test");
    EXPECT_EQ(text.rfind("# provenance: test\n", 0), 0u);
    EXPECT_NE(text.find("verdict: explicit-warrant is detrimental compared to all-implicit"), std::string::npos);
    EXPECT_NE(text.find("negative at p < .05: 1, 16"), std::string::npos);
    EXPECT_NE(text.find("positive at p < .05: none"), std::string::npos);
}

TEST(Reports, EmitWritesFourFiles) {
    const auto dir = scratch("emit");
    const auto s = run_sweep(small(3, {1, 2}));
    const auto paths = emit_reports(s, dir);
    for (const auto& p : {paths.runs_csv, paths.summary_csv, paths.difference_svg, paths.verdict_txt}) {
        EXPECT_TRUE(fs::exists(p)) << p;
    }
    const auto summary = slurp(paths.summary_csv);
    EXPECT_EQ(summary.rfind("# provenance: config_hash=", 0), 0u);
    EXPECT_EQ(lines(summary), 2u + 2u);
    EXPECT_EQ(slurp(paths.runs_csv), render_runs_csv(s));
    fs::remove_all(dir);
}

TEST(Reports, UnwritableDirectoryIsReported) {
    const auto file = scratch("blocker");
    std::ofstream(file) << "x";
    EXPECT_THROW(emit_reports(run_sweep(small(2, {1})), file / "sub"), ReportError);
    fs::remove(file);
}
