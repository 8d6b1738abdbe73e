#include "designworld/experiment.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#ifndef DESIGNWORLD_VERSION
#define DESIGNWORLD_VERSION "0.0.0"
#endif

namespace designworld {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw ConfigError(fmt::format("{}: '{}' is not a number", key, v));
    return out;
}

long long parse_int(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw ConfigError(fmt::format("{}: '{}' is not an integer", key, v));
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw ConfigError(fmt::format("{}: '{}' is not a seed", key, v));
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, v));
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string join(const std::vector<double>& xs, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += sep;
        out += fmt::format("{}", xs[i]);
    }
    return out;
}

}  // namespace

std::string StrategyPair::name() const {
    if (a == b) return to_string(a);
    return fmt::format("{}:{}", to_string(a), to_string(b));
}

StrategyPair StrategyPair::parse(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        const auto st = parse_strategy(trim(s));
        return {st, st};
    }
    return {parse_strategy(trim(s.substr(0, colon))), parse_strategy(trim(s.substr(colon + 1)))};
}

void ExperimentConfig::validate() const {
    if (runs < 2) throw ConfigError("runs must be at least 2");
    if (radii.empty()) throw ConfigError("radii must not be empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 0.0 && radii[i] <= kMaxRadius)) {
            throw ConfigError(fmt::format("radius {} outside [0, {}]", radii[i], kMaxRadius));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (radii[j] == radii[i]) throw ConfigError(fmt::format("radius {} listed twice", radii[i]));
        }
    }
    if (livelock_bound < 0) throw ConfigError("livelock_bound must be non-negative");
    if (agent.grid_size < 2) throw ConfigError("grid_size must be at least 2");
    try {
        costs.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    world.validate();
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "strategy1") first = StrategyPair::parse(v);
    else if (key == "strategy2") second = StrategyPair::parse(v);
    else if (key == "task") task = parse_task(v);
    else if (key == "commcost") costs.commcost = parse_double(key, v);
    else if (key == "infcost") costs.infcost = parse_double(key, v);
    else if (key == "retcost") costs.retcost = parse_double(key, v);
    else if (key == "radii") radii = parse_list(key, v);
    else if (key == "runs") runs = static_cast<int>(parse_int(key, v));
    else if (key == "seed") seed = parse_u64(key, v);
    else if (key == "pieces_per_agent") world.pieces_per_agent = static_cast<int>(parse_int(key, v));
    else if (key == "score_min") world.score_min = static_cast<int>(parse_int(key, v));
    else if (key == "score_max") world.score_max = static_cast<int>(parse_int(key, v));
    else if (key == "room_capacity") world.room_capacity = static_cast<int>(parse_int(key, v));
    else if (key == "paired") paired = parse_bool(key, v);
    else if (key == "livelock_bound") livelock_bound = static_cast<int>(parse_int(key, v));
    else if (key == "explicit_accept") explicit_accept = parse_bool(key, v);
    else if (key == "grid_size") agent.grid_size = static_cast<int>(parse_int(key, v));
    else if (key == "speaker_stores_own_acts") agent.speaker_stores_own_acts = parse_bool(key, v);
    else if (key == "store_mutual_intentions") agent.store_mutual_intentions = parse_bool(key, v);
    else if (key == "store_generated_options") agent.store_generated_options = parse_bool(key, v);
    else if (key == "exclude_rejected_options") agent.exclude_rejected_options = parse_bool(key, v);
    else if (key == "infer_counter_floor") agent.infer_counter_floor = parse_bool(key, v);
    else if (key == "output_dir") output_dir = v;
    else throw ConfigError(fmt::format("unknown setting '{}'", key));
}

std::string ExperimentConfig::canonical() const {
    std::string out;
    auto line = [&out](std::string_view k, const std::string& v) { out += fmt::format("{} = {}\n", k, v); };
    line("strategy1", first.name());
    line("strategy2", second.name());
    line("task", to_string(task));
    line("commcost", fmt::format("{}", costs.commcost));
    line("infcost", fmt::format("{}", costs.infcost));
    line("retcost", fmt::format("{}", costs.retcost));
    line("radii", join(radii, ","));
    line("runs", fmt::format("{}", runs));
    line("seed", fmt::format("{}", seed));
    line("pieces_per_agent", fmt::format("{}", world.pieces_per_agent));
    line("score_min", fmt::format("{}", world.score_min));
    line("score_max", fmt::format("{}", world.score_max));
    line("room_capacity", fmt::format("{}", world.room_capacity));
    line("paired", paired ? "true" : "false");
    line("livelock_bound", fmt::format("{}", livelock_bound));
    line("explicit_accept", explicit_accept ? "true" : "false");
    line("grid_size", fmt::format("{}", agent.grid_size));
    line("speaker_stores_own_acts", agent.speaker_stores_own_acts ? "true" : "false");
    line("store_mutual_intentions", agent.store_mutual_intentions ? "true" : "false");
    line("store_generated_options", agent.store_generated_options ? "true" : "false");
    line("exclude_rejected_options", agent.exclude_rejected_options ? "true" : "false");
    line("infer_counter_floor", agent.infer_counter_floor ? "true" : "false");
    return out;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(canonical()); }

DialogueConfig ExperimentConfig::dialogue(const StrategyPair& arm, double radius) const {
    DialogueConfig d;
    d.strategy_a = arm.a;
    d.strategy_b = arm.b;
    d.radius = Radius(radius);
    d.task = task;
    d.costs = costs;
    d.livelock_bound = livelock_bound;
    d.explicit_accept = explicit_accept;
    d.agent = agent;
    return d;
}

ExperimentConfig default_experiment() {
    ExperimentConfig c;
    if (const char* env = std::getenv("DESIGNWORLD_SEED"); env != nullptr && *env != '\0') {
        c.seed = parse_u64("DESIGNWORLD_SEED", trim(env));
    }
    return c;
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", lineno));
        }
        base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read config file {}", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

const std::vector<std::string>& replication_names() {
    static const std::vector<std::string> names{"figure3", "figure4", "figure5", "figure6"};
    return names;
}

ExperimentConfig replication_preset(const std::string& figure, ExperimentConfig base) {
    base.first = {Strategy::ExplicitWarrant, Strategy::ExplicitWarrant};
    base.second = {Strategy::AllImplicit, Strategy::AllImplicit};
    if (figure == "figure3") {
        base.task = TaskKind::Standard;
        base.costs = {1.0, 1.0, 0.0};
    } else if (figure == "figure4") {
        base.task = TaskKind::Standard;
        base.costs = {1.0, 1.0, 0.01};
    } else if (figure == "figure5") {
        base.task = TaskKind::Standard;
        base.costs = {10.0, 0.0, 0.0};
    } else if (figure == "figure6") {
        base.task = TaskKind::ZeroNonMatchingBeliefs;
        base.costs = {10.0, 0.0, 0.0};
    } else {
        throw ConfigError(fmt::format("unknown replication '{}' (expected figure3..figure6)", figure));
    }
    return base;
}

std::uint64_t world_seed_for(const ExperimentConfig& config, int arm, int run) {
    const std::uint64_t arm_part = config.paired ? 0 : static_cast<std::uint64_t>(arm) + 1;
    return derive_seed({config.seed, 0x574f524cULL, arm_part, static_cast<std::uint64_t>(run)});
}

std::uint64_t dialogue_seed_for(const ExperimentConfig& config, double radius, int arm, int run) {
    const std::uint64_t arm_part = config.paired ? 0 : static_cast<std::uint64_t>(arm) + 1;
    return derive_seed({config.seed, 0x4449414cULL, std::bit_cast<std::uint64_t>(radius), arm_part,
                        static_cast<std::uint64_t>(run)});
}

SweepSummary run_sweep(const ExperimentConfig& config) {
    config.validate();
    SweepSummary summary;
    summary.config = config;
    summary.config_hash = config.hash();
    summary.version = DESIGNWORLD_VERSION;

    // Worlds depend only on the run index (and arm, when unpaired), so build
    // each once and reuse it across radii.
    std::vector<std::vector<World>> worlds(2);
    for (int arm = 0; arm < 2; ++arm) {
        for (int run = 0; run < config.runs; ++run) {
            worlds[arm].push_back(build_world(world_seed_for(config, arm, run), config.world));
        }
    }

    for (double radius : config.radii) {
        RadiusSamples samples;
        samples.radius = radius;
        for (int arm = 0; arm < 2; ++arm) {
            const auto& pair = arm == 0 ? config.first : config.second;
            const auto dialogue = config.dialogue(pair, radius);
            for (int run = 0; run < config.runs; ++run) {
                RunRecord rec;
                rec.radius = radius;
                rec.arm = arm;
                rec.run = run;
                rec.world_seed = world_seed_for(config, arm, run);
                rec.dialogue_seed = dialogue_seed_for(config, radius, arm, run);
                const auto result = run_dialogue(worlds[arm][run], dialogue, rec.dialogue_seed);
                rec.performance = result.performance;
                rec.row = csv_row(rec.dialogue_seed, dialogue, result);
                (arm == 0 ? samples.first : samples.second).push_back(result.performance);
                summary.runs.push_back(std::move(rec));
            }
        }
        summary.samples.push_back(std::move(samples));
    }

    std::stable_sort(summary.runs.begin(), summary.runs.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.radius != b.radius) return a.radius < b.radius;
        if (a.arm != b.arm) return a.arm < b.arm;
        return a.run < b.run;
    });
    std::stable_sort(summary.samples.begin(), summary.samples.end(),
                     [](const RadiusSamples& a, const RadiusSamples& b) { return a.radius < b.radius; });
    summary.classification = classify(summary.samples);
    summary.differences = difference_series(summary.samples);
    return summary;
}

std::string render_runs_csv(const SweepSummary& summary) {
    std::string out = "arm,run," + csv_header() + "\n";
    for (const auto& r : summary.runs) {
        out += fmt::format("{},{},{}\n", r.arm + 1, r.run, r.row);
    }
    return out;
}

std::string provenance_line(const SweepSummary& summary) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return fmt::format("# provenance: config_hash={:016x} seed={} version={} generated={}", summary.config_hash,
                       summary.config.seed, summary.version, stamp);
}

std::string render_summary_csv(const SweepSummary& summary, const std::string& provenance) {
    std::string out = provenance + "\n";
    out += "radius,runs,mean_1,mean_2,difference,median_1,median_2,ks_d,p_value,direction,significant\n";
    for (std::size_t i = 0; i < summary.samples.size(); ++i) {
        const auto& s = summary.samples[i];
        const auto& c = summary.classification.support[i];
        const char* dir = c.direction > 0 ? "positive" : (c.direction < 0 ? "negative" : "none");
        out += fmt::format("{},{},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.6f},{},{}\n", s.radius,
                           s.first.size(), mean(s.first), mean(s.second), c.mean_difference, median(s.first),
                           median(s.second), c.ks.d_statistic, c.ks.p_value, dir,
                           c.significant(kSignificance) ? "yes" : "no");
    }
    return out;
}

std::string render_verdict(const SweepSummary& summary, const std::string& provenance) {
    const auto& cls = summary.classification;
    const auto& cfg = summary.config;
    std::string out = provenance + "\n";
    out += fmt::format("comparison: {} vs {}\n", cfg.first.name(), cfg.second.name());
    out += fmt::format("task: {}, commcost = {}, infcost = {}, retcost = {}\n", to_string(cfg.task),
                       cfg.costs.commcost, cfg.costs.infcost, cfg.costs.retcost);
    out += fmt::format("verdict: {} is {} compared to {}\n", cfg.first.name(), to_string(cls.verdict),
                       cfg.second.name());
    auto radii = [](const std::vector<double>& xs) { return xs.empty() ? std::string("none") : join(xs, ", "); };
    out += fmt::format("positive at p < .05: {}\n", radii(cls.significant_radii(+1)));
    out += fmt::format("negative at p < .05: {}\n", radii(cls.significant_radii(-1)));
    return out;
}

std::string render_difference_svg(const SweepSummary& summary) {
    constexpr double kWidth = 640, kHeight = 420;
    constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    double x_max = kMaxRadius;
    double y_abs = 0.0;
    for (const auto& p : summary.differences) {
        x_max = std::max(x_max, p.radius);
        y_abs = std::max(y_abs, std::abs(p.difference));
    }
    y_abs = y_abs > 0.0 ? y_abs * 1.1 : 1.0;
    auto sx = [&](double r) { return kLeft + plot_w * r / x_max; };
    auto sy = [&](double d) { return kTop + plot_h * (0.5 - d / (2.0 * y_abs)); };

    const auto& cfg = summary.config;
    std::string out;
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", kWidth,
        kHeight, kWidth, kHeight);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        "{} - {}: {}, commcost={}, infcost={}, retcost={}</text>\n",
        kWidth / 2, cfg.first.name(), cfg.second.name(), to_string(cfg.task), cfg.costs.commcost,
        cfg.costs.infcost, cfg.costs.retcost);
    // axes
    out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\"/>\n", kLeft,
                       kTop, kLeft, kTop + plot_h);
    out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\"/>\n", kLeft,
                       kTop + plot_h, kLeft + plot_w, kTop + plot_h);
    out += fmt::format(
        "<line class=\"zero\" x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"gray\" "
        "stroke-dasharray=\"4 3\"/>\n",
        kLeft, sy(0.0), kLeft + plot_w, sy(0.0));
    for (int k = -2; k <= 2; ++k) {
        const double v = y_abs * k / 2.0;
        out += fmt::format(
            "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            "{:.1f}</text>\n",
            kLeft - 6, sy(v) + 4, v);
    }
    for (const auto& p : summary.differences) {
        out += fmt::format(
            "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" "
            "text-anchor=\"middle\">{}</text>\n",
            sx(p.radius), kTop + plot_h + 16, p.radius);
    }
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" "
        "text-anchor=\"middle\">attention/working memory radius</text>\n",
        kLeft + plot_w / 2, kHeight - 10);
    out += fmt::format(
        "<text x=\"16\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 16 {:.1f})\">mean performance difference</text>\n",
        kTop + plot_h / 2, kTop + plot_h / 2);

    std::string points;
    for (const auto& p : summary.differences) {
        if (!points.empty()) points += ' ';
        points += fmt::format("{:.1f},{:.1f}", sx(p.radius), sy(p.difference));
    }
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n", points);
    for (const auto& p : summary.differences) {
        out += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3.5\" fill=\"steelblue\"/>\n", sx(p.radius),
                           sy(p.difference));
    }
    out += "</svg>\n";
    return out;
}

ReportPaths emit_reports(const SweepSummary& summary, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ReportError(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));

    ReportPaths paths{dir / "runs.csv", dir / "summary.csv", dir / "difference.svg", dir / "verdict.txt"};
    auto write = [](const std::filesystem::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw ReportError(fmt::format("cannot write {}", p.string()));
        out << text;
        out.flush();
        if (!out) throw ReportError(fmt::format("write failed for {}", p.string()));
    };
    const auto prov = provenance_line(summary);
    write(paths.runs_csv, render_runs_csv(summary));
    write(paths.summary_csv, render_summary_csv(summary, prov));
    write(paths.difference_svg, render_difference_svg(summary));
    write(paths.verdict_txt, render_verdict(summary, prov));
    return paths;
}

}  // namespace designworld
