#include "designworld/task.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <fmt/format.h>

namespace designworld {

namespace {

constexpr std::array<const char*, 8> kColours{"green", "purple", "red", "blue",
                                              "yellow", "white", "black", "orange"};
constexpr std::array<const char*, 8> kKinds{"rug", "lamp", "couch", "chair",
                                            "table", "desk", "shelf", "sofa"};

std::string label_for(PieceId id) {
    const auto n = static_cast<std::size_t>(id);
    std::string label = fmt::format("{} {}", kColours[n % kColours.size()],
                                    kKinds[(n / kColours.size()) % kKinds.size()]);
    if (n >= kColours.size() * kKinds.size()) label += fmt::format(" #{}", n);
    return label;
}

}  // namespace

const char* to_string(AgentId id) noexcept { return id == AgentId::A ? "A" : "B"; }

const char* to_string(Room r) noexcept { return r == Room::One ? "room-1" : "room-2"; }

std::string to_string(const Proposition& p) {
    struct Visitor {
        std::string operator()(const Score& s) const {
            return fmt::format("score(piece-{} {})", s.piece, s.points);
        }
        std::string operator()(const Owns& o) const {
            return fmt::format("has(agent-{} piece-{})", to_string(o.agent), o.piece);
        }
        std::string operator()(const Intended& i) const {
            return fmt::format("intend-{}(option-{} agent-{} piece-{} {})",
                               i.status == IntentionStatus::Mutual ? "mutual" : "pending",
                               i.option.option_id, to_string(i.option.actor), i.option.piece,
                               to_string(i.option.room));
        }
        std::string operator()(const WarrantFor& w) const {
            return fmt::format("warrant(option-{} {})", w.option.option_id, w.points);
        }
    };
    return std::visit(Visitor{}, p);
}

void WorldConfig::validate() const {
    if (pieces_per_agent < 1) throw ConfigError("pieces_per_agent must be positive");
    if (room_capacity < 1) throw ConfigError("room_capacity must be positive");
    if (score_min < 1 || score_max < score_min) {
        throw ConfigError(fmt::format("invalid score range [{}, {}]", score_min, score_max));
    }
    if (pieces_per_agent * 2 < room_capacity * static_cast<int>(kRoomCount)) {
        throw ConfigError(fmt::format("{} pieces per agent cannot fill two rooms of capacity {}",
                                      pieces_per_agent, room_capacity));
    }
}

bool operator==(const Piece& a, const Piece& b) {
    return a.id == b.id && a.label == b.label && a.points == b.points && a.owner == b.owner;
}

bool World::operator==(const World& o) const {
    return pieces == o.pieces && inventory == o.inventory;
}

int World::optimal_raw_score() const {
    std::vector<int> points;
    points.reserve(pieces.size());
    for (const auto& p : pieces) points.push_back(p.points);
    std::sort(points.begin(), points.end(), std::greater<>());
    const auto k = std::min(points.size(),
                            static_cast<std::size_t>(config.room_capacity) * kRoomCount);
    return std::accumulate(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(k), 0);
}

World build_world(std::uint64_t seed, const WorldConfig& config) {
    config.validate();
    Rng rng(derive_seed({seed, 0x776f726c64ULL}));
    World world;
    world.config = config;
    const int total = config.pieces_per_agent * 2;
    world.pieces.reserve(static_cast<std::size_t>(total));
    for (PieceId id = 0; id < total; ++id) {
        const AgentId owner = id < config.pieces_per_agent ? AgentId::A : AgentId::B;
        world.pieces.push_back(Piece{id, label_for(id),
                                     static_cast<int>(rng.between(config.score_min, config.score_max)),
                                     owner});
        world.inventory[index_of(owner)].push_back(id);
    }
    return world;
}

void seed_memory(AwmGrid& grid, const World& world, AgentId agent, Rng& rng) {
    std::vector<Proposition> props;
    for (const auto& p : world.pieces) props.emplace_back(Score{p.id, p.points});
    for (auto id : world.inventory_of(agent)) props.emplace_back(Owns{agent, id});
    rng.shuffle(std::span<Proposition>(props));
    for (auto& p : props) grid.store(std::move(p));
}

std::string describe(const World& world) {
    std::string out;
    for (const auto& p : world.pieces) {
        out += fmt::format("piece {} | {} | {} | {}\n", p.id, p.label, p.points, to_string(p.owner));
    }
    return out;
}

void DesignPlan::add(const PutOption& option, int points) {
    if (contains_piece(option.piece)) {
        throw std::logic_error(fmt::format("piece {} already placed", option.piece));
    }
    if (room_full(option.room)) {
        throw std::logic_error(fmt::format("{} is at capacity", to_string(option.room)));
    }
    rooms_[index_of(option.room)].push_back({option, points});
}

std::optional<Room> DesignPlan::current_room() const {
    if (!room_full(Room::One)) return Room::One;
    if (!room_full(Room::Two)) return Room::Two;
    return std::nullopt;
}

bool DesignPlan::contains_piece(PieceId piece) const {
    for (const auto& room : rooms_)
        for (const auto& p : room)
            if (p.option.piece == piece) return true;
    return false;
}

std::vector<Placement> DesignPlan::placements() const {
    std::vector<Placement> out(rooms_[0]);
    out.insert(out.end(), rooms_[1].begin(), rooms_[1].end());
    return out;
}

bool WarrantLedger::all_matched() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second; });
}

const char* to_string(TaskKind t) noexcept {
    return t == TaskKind::Standard ? "standard" : "zero-nonmatching-beliefs";
}

TaskKind parse_task(const std::string& s) {
    if (s == "standard") return TaskKind::Standard;
    if (s == "zero-nonmatching-beliefs" || s == "znmb") return TaskKind::ZeroNonMatchingBeliefs;
    throw ConfigError(fmt::format("unknown task '{}'", s));
}

int standard_raw_score(const DesignPlan& plan) {
    int total = 0;
    for (const auto& p : plan.placements()) total += p.points;
    return total;
}

int znmb_raw_score(const DesignPlan& plan, const WarrantLedger& ledger) {
    const auto placed = plan.placements();
    if (placed.size() != ledger.size()) {
        throw std::logic_error("warrant ledger does not match the plan");
    }
    for (const auto& p : placed) {
        if (!ledger.entries().contains(p.option.option_id)) {
            throw std::logic_error(fmt::format("option {} missing from warrant ledger", p.option.option_id));
        }
    }
    return ledger.all_matched() ? standard_raw_score(plan) : 0;
}

int raw_score(TaskKind task, const DesignPlan& plan, const WarrantLedger& ledger) {
    return task == TaskKind::Standard ? standard_raw_score(plan) : znmb_raw_score(plan, ledger);
}

}  // namespace designworld
