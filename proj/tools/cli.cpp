#include "cli.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "designworld/experiment.hpp"

namespace designworld {

namespace {

struct SweepFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<std::string> radii;
    std::optional<std::string> task;
    std::optional<std::string> strategy1;
    std::optional<std::string> strategy2;
    std::optional<double> commcost;
    std::optional<double> infcost;
    std::optional<double> retcost;
    std::vector<std::string> settings;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
    cmd->add_option("--config", f.config, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--seed", f.seed, "master seed (default: $DESIGNWORLD_SEED)");
    cmd->add_option("--runs", f.runs, "dialogues per cell");
    cmd->add_option("--radii", f.radii, "comma-separated AWM radii");
    cmd->add_option("--task", f.task, "standard | zero-nonmatching-beliefs");
    cmd->add_option("--strategy1", f.strategy1, "first arm, e.g. explicit-warrant");
    cmd->add_option("--strategy2", f.strategy2, "second arm, e.g. all-implicit");
    cmd->add_option("--commcost", f.commcost);
    cmd->add_option("--infcost", f.infcost);
    cmd->add_option("--retcost", f.retcost);
    cmd->add_option("--set", f.settings, "extra key=value setting (repeatable)");
}

ExperimentConfig apply_flags(ExperimentConfig cfg, const SweepFlags& f) {
    for (const auto& kv : f.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError(fmt::format("--set expects key=value, got '{}'", kv));
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (f.seed) cfg.seed = *f.seed;
    if (f.runs) cfg.runs = *f.runs;
    if (f.radii) cfg.set("radii", *f.radii);
    if (f.task) cfg.set("task", *f.task);
    if (f.strategy1) cfg.set("strategy1", *f.strategy1);
    if (f.strategy2) cfg.set("strategy2", *f.strategy2);
    if (f.commcost) cfg.costs.commcost = *f.commcost;
    if (f.infcost) cfg.costs.infcost = *f.infcost;
    if (f.retcost) cfg.costs.retcost = *f.retcost;
    if (!f.out.empty()) cfg.output_dir = f.out;
    return cfg;
}

int sweep_and_report(const ExperimentConfig& cfg, std::ostream& out) {
    const auto summary = run_sweep(cfg);
    const auto paths = emit_reports(summary, cfg.output_dir);
    out << render_verdict(summary, provenance_line(summary));
    out << fmt::format("wrote {} dialogues to {}\n", summary.runs.size(), cfg.output_dir.string());
    out << fmt::format("  {}\n  {}\n  {}\n  {}\n", paths.runs_csv.string(), paths.summary_csv.string(),
                       paths.difference_svg.string(), paths.verdict_txt.string());
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-agent negotiation dialogues under bounded attention"};
    app.name("designworld");
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run one dialogue and print its transcript");
    std::uint64_t run_seed = default_experiment().seed;
    std::string strategy_a = "all-implicit";
    std::string strategy_b = "all-implicit";
    double radius = 16;
    std::string task = "standard";
    double commcost = 0, infcost = 0, retcost = 0;
    std::string run_config;
    bool show_world = false;
    bool show_memory = false;
    run->add_option("--seed", run_seed, "dialogue and world seed");
    run->add_option("--strategy-a", strategy_a, "all-implicit | explicit-warrant");
    run->add_option("--strategy-b", strategy_b, "all-implicit | explicit-warrant");
    run->add_option("--radius", radius, "AWM search radius, 0..16");
    run->add_option("--task", task, "standard | zero-nonmatching-beliefs");
    run->add_option("--commcost", commcost);
    run->add_option("--infcost", infcost);
    run->add_option("--retcost", retcost);
    run->add_option("--config", run_config, "config file for world/protocol settings")->check(CLI::ExistingFile);
    run->add_flag("--world", show_world, "print the world before the transcript");
    run->add_flag("--memory", show_memory, "print agent A's initial memory dump");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write reports");
    SweepFlags sweep_flags;
    add_sweep_flags(sweep, sweep_flags);

    // replicate
    auto* replicate = app.add_subcommand("replicate", "run a preset contrast (figure3..figure6)");
    std::string figure;
    SweepFlags rep_flags;
    replicate->add_option("figure", figure, "figure3 | figure4 | figure5 | figure6")
        ->required()
        ->check(CLI::IsMember(replication_names()));
    add_sweep_flags(replicate, rep_flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*run) {
            ExperimentConfig cfg = default_experiment();
            if (!run_config.empty()) cfg = load_config(run_config, cfg);
            cfg.first = {parse_strategy(strategy_a), parse_strategy(strategy_b)};
            cfg.task = parse_task(task);
            cfg.costs = {commcost, infcost, retcost};
            cfg.world.validate();
            const auto dialogue = cfg.dialogue(cfg.first, radius);
            const auto world = build_world(run_seed, cfg.world);
            if (show_world) out << describe(world);
            if (show_memory) {
                Agent probe(AgentId::A, dialogue.strategy_a, dialogue.radius, world, run_seed, dialogue.agent);
                out << probe.memory().dump();
            }
            const auto result = run_dialogue(world, dialogue, run_seed);
            out << format_transcript(result, world);
            for (const auto& line : result.log) out << "# " << line << '\n';
            out << csv_header() << '\n' << csv_row(run_seed, dialogue, result) << '\n';
            return 0;
        }
        if (*sweep) {
            ExperimentConfig cfg = default_experiment();
            if (!sweep_flags.config.empty()) cfg = load_config(sweep_flags.config, cfg);
            return sweep_and_report(apply_flags(cfg, sweep_flags), out);
        }
        if (*replicate) {
            ExperimentConfig cfg = default_experiment();
            if (!rep_flags.config.empty()) cfg = load_config(rep_flags.config, cfg);
            cfg = replication_preset(figure, cfg);
            if (rep_flags.out.empty()) cfg.output_dir = std::filesystem::path("results") / figure;
            return sweep_and_report(apply_flags(cfg, rep_flags), out);
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n' << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace designworld
