#pragma once

// The furniture-placement task: pieces, inventories, the negotiated plan, and
// the two raw-score definitions.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "designworld/awm.hpp"
#include "designworld/proposition.hpp"

namespace designworld {

struct Piece {
    PieceId id = 0;
    std::string label;
    int points = 0;
    AgentId owner = AgentId::A;
};

struct WorldConfig {
    int pieces_per_agent = 6;
    int score_min = 10;
    int score_max = 56;
    int room_capacity = 4;

    void validate() const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct World {
    WorldConfig config;
    std::vector<Piece> pieces;  // indexed by PieceId
    std::array<std::vector<PieceId>, 2> inventory;

    const Piece& piece(PieceId id) const { return pieces.at(static_cast<std::size_t>(id)); }
    const std::vector<PieceId>& inventory_of(AgentId a) const { return inventory[index_of(a)]; }

    // Sum of the best `2 * room_capacity` piece scores: the best plan any
    // negotiation can reach.
    int optimal_raw_score() const;

    bool operator==(const World&) const;
};

bool operator==(const Piece& a, const Piece& b);

World build_world(std::uint64_t seed, const WorldConfig& config = {});

// Stores every Score proposition and the agent's own Owns propositions in a
// shuffled order drawn from `rng`.
void seed_memory(AwmGrid& grid, const World& world, AgentId agent, Rng& rng);

// "piece <id> | <label> | <points> | <owner>" per line.
std::string describe(const World& world);

struct Placement {
    PutOption option;
    int points = 0;
};

class DesignPlan {
public:
    explicit DesignPlan(int capacity = 4) : capacity_(capacity) {}

    // Throws std::logic_error when the piece is already placed or the room is full.
    void add(const PutOption& option, int points);

    int capacity() const noexcept { return capacity_; }
    const std::vector<Placement>& room(Room r) const { return rooms_[index_of(r)]; }
    bool room_full(Room r) const { return static_cast<int>(room(r).size()) >= capacity_; }
    std::optional<Room> current_room() const;
    bool contains_piece(PieceId piece) const;
    std::size_t size() const noexcept { return rooms_[0].size() + rooms_[1].size(); }
    std::vector<Placement> placements() const;

private:
    int capacity_;
    std::array<std::vector<Placement>, kRoomCount> rooms_;
};

// option id -> whether both agents held the same salient Score belief when
// the option was accepted.
class WarrantLedger {
public:
    void record(const PutOption& option, bool matched) { entries_[option.option_id] = matched; }
    const std::map<int, bool>& entries() const noexcept { return entries_; }
    bool all_matched() const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<int, bool> entries_;
};

enum class TaskKind : std::uint8_t { Standard, ZeroNonMatchingBeliefs };

const char* to_string(TaskKind t) noexcept;
TaskKind parse_task(const std::string& s);

int standard_raw_score(const DesignPlan& plan);

// Zero unless every accepted option has a matched warrant. Throws
// std::logic_error when the ledger does not cover exactly the plan's options.
int znmb_raw_score(const DesignPlan& plan, const WarrantLedger& ledger);

int raw_score(TaskKind task, const DesignPlan& plan, const WarrantLedger& ledger);

}  // namespace designworld
