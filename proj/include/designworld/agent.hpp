#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "designworld/awm.hpp"
#include "designworld/proposition.hpp"
#include "designworld/task.hpp"

namespace designworld {

enum class Strategy : std::uint8_t { AllImplicit, ExplicitWarrant };

const char* to_string(Strategy s) noexcept;
Strategy parse_strategy(const std::string& s);

namespace acts {
struct Open {};
struct Close {};
struct Propose {
    PutOption option;
};
// Warrant for `about`: the speaker's Score belief for the option's piece.
struct Say {
    PutOption about;
    Score warrant;
};
struct Reject {
    PutOption rejected;
    std::optional<PutOption> counter;  // empty for precondition failures
};
struct Accept {
    PutOption option;
};
}  // namespace acts

struct CommunicativeAct {
    using Content = std::variant<acts::Open, acts::Close, acts::Propose, acts::Say, acts::Reject, acts::Accept>;

    AgentId sender = AgentId::A;
    AgentId addressee = AgentId::B;
    Content content;

    const char* type_name() const noexcept;
};

// A means-end option with the score the agent managed to retrieve for it.
struct RankedOption {
    PutOption option;
    std::optional<int> score;
};

struct DeliberationOutcome {
    enum class Kind : std::uint8_t { AcceptIt, RejectWithCounter, RejectPrecondition };

    Kind kind = Kind::AcceptIt;
    std::optional<RankedOption> counter;
    std::optional<int> proposal_score;  // as retrieved by the deliberating agent
    std::optional<int> proposal_floor;  // inferred lower bound when not retrieved
    std::uint64_t proposal_steps = 0;   // steps spent locating the proposal's Score
};

const char* to_string(DeliberationOutcome::Kind k) noexcept;

struct AgentOptions {
    int grid_size = kDefaultGridSize;
    // Speakers also store what they say (warrants, proposals, counters).
    bool speaker_stores_own_acts = false;
    // Both agents store the mutual intention when an option is accepted.
    bool store_mutual_intentions = true;
    // Means-end reasoning stores a WarrantFor belief for each scored option.
    bool store_generated_options = true;
    // Options the addressee rejected earlier in the same proposal segment are
    // not offered again as counters.
    bool exclude_rejected_options = true;
    // A counter to one of our own scored offers is taken to beat that offer:
    // when the counter's score cannot be retrieved, the rejected offer's score
    // stands in as a lower bound during deliberation.
    bool infer_counter_floor = true;
};

// A deliberating agent whose every belief lookup goes through its AWM grid.
class Agent {
public:
    Agent(AgentId id, Strategy strategy, Radius radius, const World& world, std::uint64_t seed,
          AgentOptions options = {});

    // Options for `room` from owned, unused, unblocked pieces. Scored options
    // come first (score descending, then piece id); unscored ones follow in
    // piece-id order. One inference per option.
    std::vector<RankedOption> generate_options(Room room);

    DeliberationOutcome deliberate(const PutOption& proposal);

    // Propose, preceded by a warrant under ExplicitWarrant when the option
    // carries a retrieved score.
    std::vector<CommunicativeAct> make_proposal(const RankedOption& option, AgentId addressee);

    // Reject acts for a deliberation outcome; counters are expanded like
    // proposals.
    std::vector<CommunicativeAct> make_rejection(const PutOption& proposal, const DeliberationOutcome& outcome,
                                                 AgentId addressee);

    // Belief update for an act addressed to this agent.
    void incorporate(const CommunicativeAct& act);

    // Speaker-side storage of an act this agent emitted (no-op unless
    // speaker_stores_own_acts).
    void note_sent(const CommunicativeAct& act);

    // The option became a mutual intention: mark the piece used.
    void commit(const PutOption& option);

    // Start of a new proposal segment: forget which own options were rejected.
    void begin_segment() {
        rejected_.clear();
        counter_floor_.clear();
    }

    // Excludes a piece from future option generation (livelock guard).
    void block(PieceId piece) { blocked_.insert(piece); }

    void charge_inference(std::uint64_t n = 1) noexcept { inferences_ += n; }

    // Uncharged check of whether the Score of `piece` is currently salient.
    std::optional<int> probe_score(PieceId piece) const;

    AgentId id() const noexcept { return id_; }
    Strategy strategy() const noexcept { return strategy_; }
    Radius radius() const noexcept { return radius_; }
    const AwmGrid& memory() const noexcept { return memory_; }
    AwmGrid& memory() noexcept { return memory_; }
    std::uint64_t inferences() const noexcept { return inferences_; }
    std::uint64_t retrieval_steps() const noexcept { return memory_.retrieval_steps(); }
    std::uint64_t warrant_fallbacks() const noexcept { return warrant_fallbacks_; }
    const std::set<PieceId>& used() const noexcept { return used_; }
    bool is_used(PieceId piece) const { return used_.contains(piece); }
    int room_fill(Room r) const noexcept { return room_fill_[index_of(r)]; }

private:
    std::optional<int> retrieve_score(PieceId piece, std::uint64_t* steps = nullptr);
    std::vector<RankedOption> rank_options(Room room, bool skip_rejected);
    CommunicativeAct act(AgentId to, CommunicativeAct::Content content) const {
        return CommunicativeAct{id_, to, std::move(content)};
    }

    AgentId id_;
    Strategy strategy_;
    Radius radius_;
    const World* world_;
    AgentOptions options_;
    AwmGrid memory_;
    std::uint64_t inferences_ = 0;
    std::uint64_t warrant_fallbacks_ = 0;
    std::set<PieceId> used_;
    std::set<PieceId> blocked_;
    std::set<PieceId> rejected_;  // own pieces rejected in the current segment
    std::optional<RankedOption> last_offer_;
    std::map<int, int> counter_floor_;  // option id -> score it was claimed to beat
    std::array<int, kRoomCount> room_fill_{};
};

}  // namespace designworld
