#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

namespace designworld {

using PieceId = int;

enum class AgentId : std::uint8_t { A = 0, B = 1 };

constexpr AgentId other(AgentId id) noexcept { return id == AgentId::A ? AgentId::B : AgentId::A; }
constexpr std::size_t index_of(AgentId id) noexcept { return static_cast<std::size_t>(id); }
const char* to_string(AgentId id) noexcept;

enum class Room : std::uint8_t { One = 0, Two = 1 };
inline constexpr std::size_t kRoomCount = 2;

constexpr std::size_t index_of(Room r) noexcept { return static_cast<std::size_t>(r); }
const char* to_string(Room r) noexcept;

// A put-act: `actor` puts `piece` into `room`. The option id is a pure
// function of (piece, room) so the same option keeps its identity across
// repeated proposals.
struct PutOption {
    int option_id = 0;
    AgentId actor = AgentId::A;
    PieceId piece = 0;
    Room room = Room::One;

    static PutOption make(AgentId actor, PieceId piece, Room room) {
        return PutOption{piece * static_cast<int>(kRoomCount) + static_cast<int>(room), actor, piece, room};
    }

    auto operator<=>(const PutOption&) const = default;
};

struct Score {
    PieceId piece = 0;
    int points = 0;
    auto operator<=>(const Score&) const = default;
};

struct Owns {
    AgentId agent = AgentId::A;
    PieceId piece = 0;
    auto operator<=>(const Owns&) const = default;
};

enum class IntentionStatus : std::uint8_t { Pending, Mutual };

struct Intended {
    PutOption option;
    IntentionStatus status = IntentionStatus::Pending;
    auto operator<=>(const Intended&) const = default;
};

struct WarrantFor {
    PutOption option;
    int points = 0;
    auto operator<=>(const WarrantFor&) const = default;
};

using Proposition = std::variant<Score, Owns, Intended, WarrantFor>;

std::string to_string(const Proposition& p);

// Matches any belief giving the points of `piece`: its Score, or a
// WarrantFor an option that puts it somewhere.
struct ScoreOf {
    PieceId piece;
    bool operator()(const Proposition& p) const {
        if (const auto* s = std::get_if<Score>(&p)) return s->piece == piece;
        if (const auto* w = std::get_if<WarrantFor>(&p)) return w->option.piece == piece;
        return false;
    }
};

// Points carried by a proposition matched by ScoreOf.
inline int points_of(const Proposition& p) {
    if (const auto* w = std::get_if<WarrantFor>(&p)) return w->points;
    return std::get<Score>(p).points;
}

}  // namespace designworld
