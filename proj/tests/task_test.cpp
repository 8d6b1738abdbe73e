#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "designworld/task.hpp"

using namespace designworld;

namespace {

PutOption put(PieceId piece, Room room, AgentId actor = AgentId::A) { return PutOption::make(actor, piece, room); }

// Plan of random placements from a world, filled room by room.
DesignPlan random_plan(const World& w, Rng& rng, std::size_t count) {
    std::vector<PieceId> ids(w.pieces.size());
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(std::span<PieceId>(ids));
    DesignPlan plan(w.config.room_capacity);
    for (std::size_t i = 0; i < count && i < ids.size(); ++i) {
        const auto room = plan.current_room();
        if (!room) break;
        plan.add(put(ids[i], *room, w.piece(ids[i]).owner), w.piece(ids[i]).points);
    }
    return plan;
}

}  // namespace

TEST(StandardScore, EmptyPlanIsZero) { EXPECT_EQ(standard_raw_score(DesignPlan{}), 0); }

TEST(StandardScore, GreenRug) {
    DesignPlan plan;
    plan.add(put(0, Room::One), 56);
    EXPECT_EQ(standard_raw_score(plan), 56);
}

TEST(StandardScore, GreenRugAndLamp) {
    DesignPlan plan;
    plan.add(put(0, Room::One), 56);
    plan.add(put(1, Room::One), 55);
    EXPECT_EQ(standard_raw_score(plan), 111);
}

TEST(StandardScore, OrderInvariantAndAdditiveOverRooms) {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const World w = build_world(static_cast<std::uint64_t>(t));
        const auto plan = random_plan(w, rng, 8);
        int by_room = 0;
        for (Room r : {Room::One, Room::Two})
            for (const auto& p : plan.room(r)) by_room += p.points;
        EXPECT_EQ(standard_raw_score(plan), by_room);

        auto placed = plan.placements();
        std::reverse(placed.begin(), placed.end());
        DesignPlan reordered(plan.capacity());
        for (const auto& p : placed) reordered.add(p.option, p.points);
        EXPECT_EQ(standard_raw_score(reordered), standard_raw_score(plan));
    }
}

TEST(ZnmbScore, AllMatched) {
    DesignPlan plan;
    WarrantLedger ledger;
    plan.add(put(0, Room::One), 56);
    plan.add(put(1, Room::One), 55);
    ledger.record(put(0, Room::One), true);
    ledger.record(put(1, Room::One), true);
    EXPECT_EQ(znmb_raw_score(plan, ledger), 111);
}

TEST(ZnmbScore, OneUnmatchedZeroesEightOptionPlan) {
    DesignPlan plan;
    WarrantLedger ledger;
    for (PieceId p = 0; p < 8; ++p) {
        const auto o = put(p, p < 4 ? Room::One : Room::Two);
        plan.add(o, 30 + p);
        ledger.record(o, p != 5);
    }
    EXPECT_EQ(standard_raw_score(plan), 8 * 30 + 28);
    EXPECT_EQ(znmb_raw_score(plan, ledger), 0);
}

TEST(ZnmbScore, EmptyIsZero) { EXPECT_EQ(znmb_raw_score(DesignPlan{}, WarrantLedger{}), 0); }

TEST(ZnmbScore, LedgerMismatchIsAnError) {
    DesignPlan plan;
    plan.add(put(0, Room::One), 56);
    WarrantLedger empty;
    EXPECT_THROW(znmb_raw_score(plan, empty), std::logic_error);
    WarrantLedger wrong;
    wrong.record(put(3, Room::One), true);
    EXPECT_THROW(znmb_raw_score(plan, wrong), std::logic_error);
}

TEST(ZnmbScore, BoundedByStandardAndEqualWhenMatched) {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const World w = build_world(static_cast<std::uint64_t>(t));
        const auto plan = random_plan(w, rng, rng.below(9));
        WarrantLedger matched, mixed;
        for (const auto& p : plan.placements()) {
            matched.record(p.option, true);
            mixed.record(p.option, rng.below(4) != 0);
        }
        EXPECT_EQ(znmb_raw_score(plan, matched), standard_raw_score(plan));
        EXPECT_LE(znmb_raw_score(plan, mixed), standard_raw_score(plan));
        EXPECT_EQ(raw_score(TaskKind::Standard, plan, mixed), standard_raw_score(plan));
    }
}

TEST(DesignPlan, RejectsDuplicatesAndOverflow) {
    DesignPlan plan(2);
    plan.add(put(0, Room::One), 10);
    EXPECT_THROW(plan.add(put(0, Room::Two), 10), std::logic_error);
    plan.add(put(1, Room::One), 10);
    EXPECT_TRUE(plan.room_full(Room::One));
    EXPECT_THROW(plan.add(put(2, Room::One), 10), std::logic_error);
    EXPECT_EQ(plan.current_room(), Room::Two);
    plan.add(put(2, Room::Two), 10);
    plan.add(put(3, Room::Two), 10);
    EXPECT_FALSE(plan.current_room().has_value());
    EXPECT_EQ(plan.size(), 4u);
}

TEST(World, DeterministicFromSeed) {
    EXPECT_TRUE(build_world(42) == build_world(42));
    int differ = 0;
    for (std::uint64_t s = 0; s < 50; ++s) differ += build_world(s) == build_world(s + 1000) ? 0 : 1;
    EXPECT_EQ(differ, 50);
}

TEST(World, InventoriesAreDisjointAndComplete) {
    WorldConfig cfg;
    cfg.pieces_per_agent = 8;
    const World w = build_world(3, cfg);
    EXPECT_EQ(w.pieces.size(), 16u);
    std::set<PieceId> all;
    for (AgentId a : {AgentId::A, AgentId::B}) {
        EXPECT_EQ(w.inventory_of(a).size(), 8u);
        for (auto id : w.inventory_of(a)) {
            EXPECT_EQ(w.piece(id).owner, a);
            EXPECT_TRUE(all.insert(id).second);
        }
    }
    for (const auto& p : w.pieces) {
        EXPECT_GE(p.points, cfg.score_min);
        EXPECT_LE(p.points, cfg.score_max);
        EXPECT_FALSE(p.label.empty());
    }
}

TEST(World, DegenerateScoreRange) {
    WorldConfig cfg;
    cfg.score_min = cfg.score_max = 56;
    for (const auto& p : build_world(9, cfg).pieces) EXPECT_EQ(p.points, 56);
}

TEST(World, ValidationErrors) {
    WorldConfig small;
    small.pieces_per_agent = 3;
    small.room_capacity = 4;
    EXPECT_THROW(build_world(1, small), ConfigError);
    WorldConfig range;
    range.score_min = 50;
    range.score_max = 40;
    EXPECT_THROW(range.validate(), ConfigError);
    WorldConfig zero;
    zero.score_min = 0;
    EXPECT_THROW(zero.validate(), ConfigError);
}

TEST(World, OptimalScoreIsTopPieces) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const World w = build_world(s);
        std::vector<int> pts;
        for (const auto& p : w.pieces) pts.push_back(p.points);
        std::sort(pts.rbegin(), pts.rend());
        EXPECT_EQ(w.optimal_raw_score(), std::accumulate(pts.begin(), pts.begin() + 8, 0));
    }
}

TEST(World, SeedMemoryStoresScoresAndOwnInventory) {
    WorldConfig cfg;
    cfg.pieces_per_agent = 8;
    const World w = build_world(4, cfg);
    AwmGrid grid(1);
    Rng rng(2);
    seed_memory(grid, w, AgentId::B, rng);
    int scores = 0, owns = 0;
    for (const auto& t : grid.traces()) {
        if (const auto* s = std::get_if<Score>(&t.prop)) {
            ++scores;
            EXPECT_EQ(s->points, w.piece(s->piece).points);
        } else if (const auto* o = std::get_if<Owns>(&t.prop)) {
            ++owns;
            EXPECT_EQ(o->agent, AgentId::B);
            EXPECT_EQ(w.piece(o->piece).owner, AgentId::B);
        }
    }
    EXPECT_EQ(scores, 16);
    EXPECT_EQ(owns, 8);
}

TEST(World, DescribeListsEveryPiece) {
    const World w = build_world(8);
    const auto text = describe(w);
    EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), w.pieces.size());
    EXPECT_EQ(text.rfind("piece 0 | ", 0), 0u);
}

TEST(Task, Parse) {
    EXPECT_EQ(parse_task("standard"), TaskKind::Standard);
    EXPECT_EQ(parse_task("znmb"), TaskKind::ZeroNonMatchingBeliefs);
    EXPECT_EQ(parse_task("zero-nonmatching-beliefs"), TaskKind::ZeroNonMatchingBeliefs);
    EXPECT_THROW(parse_task("other"), ConfigError);
}
