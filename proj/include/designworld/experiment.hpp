#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "designworld/dialogue.hpp"
#include "designworld/stats.hpp"
#include "designworld/task.hpp"

namespace designworld {

// Strategies of agent A and agent B for one side of a comparison.
struct StrategyPair {
    Strategy a = Strategy::AllImplicit;
    Strategy b = Strategy::AllImplicit;

    std::string name() const;
    static StrategyPair parse(const std::string& s);  // "explicit-warrant" or "explicit-warrant:all-implicit"
    bool operator==(const StrategyPair&) const = default;
};

struct ExperimentConfig {
    StrategyPair first{Strategy::ExplicitWarrant, Strategy::ExplicitWarrant};
    StrategyPair second{Strategy::AllImplicit, Strategy::AllImplicit};
    TaskKind task = TaskKind::Standard;
    CostModel costs{1.0, 1.0, 0.0};
    std::vector<double> radii{1, 2, 3, 4, 5, 6, 8, 11, 16};
    int runs = 100;
    std::uint64_t seed = 1994;
    WorldConfig world;
    // Both arms replay the same world and dialogue seed for each run index.
    bool paired = true;
    int livelock_bound = 3;
    bool explicit_accept = false;
    AgentOptions agent;
    std::filesystem::path output_dir = "results";

    void validate() const;

    // Applies one `key = value` setting; throws ConfigError on unknown keys
    // or malformed values.
    void set(const std::string& key, const std::string& value);

    // Every setting that influences results, one `key = value` per line.
    std::string canonical() const;
    std::uint64_t hash() const;

    DialogueConfig dialogue(const StrategyPair& arm, double radius) const;
};

// Master-seed default: DESIGNWORLD_SEED when set, otherwise the built-in seed.
ExperimentConfig default_experiment();

// Parses `key = value` lines with `#` comments on top of `base`.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base);
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base);

// Cost/task settings of the four published contrasts: figure3 .. figure6.
ExperimentConfig replication_preset(const std::string& figure, ExperimentConfig base);
const std::vector<std::string>& replication_names();

struct RunRecord {
    double radius = 0.0;
    int arm = 0;  // 0: first, 1: second
    int run = 0;
    std::uint64_t world_seed = 0;
    std::uint64_t dialogue_seed = 0;
    std::string row;  // csv_row() of the dialogue
    double performance = 0.0;
};

struct SweepSummary {
    ExperimentConfig config;
    std::vector<RunRecord> runs;
    std::vector<RadiusSamples> samples;
    std::vector<DifferencePoint> differences;
    Classification classification;
    std::uint64_t config_hash = 0;
    std::string version;
};

std::uint64_t world_seed_for(const ExperimentConfig& config, int arm, int run);
std::uint64_t dialogue_seed_for(const ExperimentConfig& config, double radius, int arm, int run);

SweepSummary run_sweep(const ExperimentConfig& config);

std::string render_runs_csv(const SweepSummary& summary);
std::string render_summary_csv(const SweepSummary& summary, const std::string& provenance);
std::string render_difference_svg(const SweepSummary& summary);
std::string render_verdict(const SweepSummary& summary, const std::string& provenance);
std::string provenance_line(const SweepSummary& summary);

struct ReportPaths {
    std::filesystem::path runs_csv;
    std::filesystem::path summary_csv;
    std::filesystem::path difference_svg;
    std::filesystem::path verdict_txt;
};

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Writes runs.csv, summary.csv, difference.svg and verdict.txt into `dir`.
ReportPaths emit_reports(const SweepSummary& summary, const std::filesystem::path& dir);

}  // namespace designworld
