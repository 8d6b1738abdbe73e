#include "designworld/agent.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace designworld {

const char* to_string(Strategy s) noexcept {
    return s == Strategy::AllImplicit ? "all-implicit" : "explicit-warrant";
}

Strategy parse_strategy(const std::string& s) {
    if (s == "all-implicit" || s == "ai") return Strategy::AllImplicit;
    if (s == "explicit-warrant" || s == "ew") return Strategy::ExplicitWarrant;
    throw ConfigError(fmt::format("unknown strategy '{}'", s));
}

const char* CommunicativeAct::type_name() const noexcept {
    struct Visitor {
        const char* operator()(const acts::Open&) const { return "open"; }
        const char* operator()(const acts::Close&) const { return "close"; }
        const char* operator()(const acts::Propose&) const { return "propose"; }
        const char* operator()(const acts::Say&) const { return "say"; }
        const char* operator()(const acts::Reject&) const { return "reject"; }
        const char* operator()(const acts::Accept&) const { return "accept"; }
    };
    return std::visit(Visitor{}, content);
}

const char* to_string(DeliberationOutcome::Kind k) noexcept {
    switch (k) {
        case DeliberationOutcome::Kind::AcceptIt: return "accept";
        case DeliberationOutcome::Kind::RejectWithCounter: return "reject-counter";
        case DeliberationOutcome::Kind::RejectPrecondition: return "reject-precondition";
    }
    return "?";
}

Agent::Agent(AgentId id, Strategy strategy, Radius radius, const World& world, std::uint64_t seed,
             AgentOptions options)
    : id_(id),
      strategy_(strategy),
      radius_(radius),
      world_(&world),
      options_(options),
      memory_(derive_seed({seed, index_of(id), 0x67726964ULL}), options.grid_size) {
    Rng shuffle(derive_seed({seed, index_of(id), 0x73656564ULL}));
    seed_memory(memory_, world, id, shuffle);
}

std::optional<int> Agent::retrieve_score(PieceId piece, std::uint64_t* steps) {
    const auto r = memory_.retrieve(ScoreOf{piece}, radius_);
    if (steps != nullptr) *steps = r.steps;
    if (!r) return std::nullopt;
    return points_of(*r.found);
}

std::optional<int> Agent::probe_score(PieceId piece) const {
    const auto r = memory_.peek(ScoreOf{piece}, radius_);
    if (!r) return std::nullopt;
    return points_of(*r.found);
}

std::vector<RankedOption> Agent::generate_options(Room room) { return rank_options(room, false); }

std::vector<RankedOption> Agent::rank_options(Room room, bool skip_rejected) {
    std::vector<RankedOption> options;
    for (PieceId piece : world_->inventory_of(id_)) {
        if (used_.contains(piece) || blocked_.contains(piece)) continue;
        if (skip_rejected && rejected_.contains(piece)) continue;
        options.push_back({PutOption::make(id_, piece, room), retrieve_score(piece)});
    }
    if (options_.store_generated_options) {
        for (const auto& o : options) {
            if (o.score) memory_.store(WarrantFor{o.option, *o.score});
        }
    }
    inferences_ += options.size();
    std::stable_sort(options.begin(), options.end(), [](const RankedOption& a, const RankedOption& b) {
        if (a.score.has_value() != b.score.has_value()) return a.score.has_value();
        if (a.score && *a.score != *b.score) return *a.score > *b.score;
        return a.option.piece < b.option.piece;
    });
    return options;
}

DeliberationOutcome Agent::deliberate(const PutOption& proposal) {
    using Kind = DeliberationOutcome::Kind;
    DeliberationOutcome out;
    inferences_ += 1;

    const bool precondition_fails = used_.contains(proposal.piece) ||
                                    room_fill(proposal.room) >= world_->config.room_capacity ||
                                    world_->piece(proposal.piece).owner != proposal.actor;
    if (precondition_fails) {
        out.kind = Kind::RejectPrecondition;
        return out;
    }

    out.proposal_score = retrieve_score(proposal.piece, &out.proposal_steps);
    if (!out.proposal_score && options_.infer_counter_floor) {
        if (auto it = counter_floor_.find(proposal.option_id); it != counter_floor_.end()) {
            out.proposal_floor = it->second;
        }
    }
    auto competitors = rank_options(proposal.room, options_.exclude_rejected_options);
    const RankedOption* best = nullptr;
    if (!competitors.empty() && competitors.front().score) best = &competitors.front();

    const auto bar = out.proposal_score ? out.proposal_score : out.proposal_floor;
    if (best != nullptr && (!bar || *best->score > *bar)) {
        out.kind = Kind::RejectWithCounter;
        out.counter = *best;
    } else {
        out.kind = Kind::AcceptIt;
    }
    return out;
}

std::vector<CommunicativeAct> Agent::make_proposal(const RankedOption& option, AgentId addressee) {
    std::vector<CommunicativeAct> out;
    if (strategy_ == Strategy::ExplicitWarrant) {
        if (option.score) {
            out.push_back(act(addressee, acts::Say{option.option, Score{option.option.piece, *option.score}}));
        } else {
            ++warrant_fallbacks_;
        }
    }
    out.push_back(act(addressee, acts::Propose{option.option}));
    last_offer_ = option;
    return out;
}

std::vector<CommunicativeAct> Agent::make_rejection(const PutOption& proposal, const DeliberationOutcome& outcome,
                                                    AgentId addressee) {
    std::vector<CommunicativeAct> out;
    if (outcome.kind == DeliberationOutcome::Kind::RejectWithCounter && outcome.counter) {
        const auto& counter = *outcome.counter;
        if (strategy_ == Strategy::ExplicitWarrant) {
            if (counter.score) {
                out.push_back(act(addressee, acts::Say{counter.option, Score{counter.option.piece, *counter.score}}));
            } else {
                ++warrant_fallbacks_;
            }
        }
        out.push_back(act(addressee, acts::Reject{proposal, counter.option}));
        last_offer_ = counter;
    } else {
        out.push_back(act(addressee, acts::Reject{proposal, std::nullopt}));
    }
    return out;
}

void Agent::incorporate(const CommunicativeAct& a) {
    struct Visitor {
        Agent& self;
        void operator()(const acts::Open&) const {}
        void operator()(const acts::Close&) const {}
        void operator()(const acts::Say& s) const { self.memory_.store(s.warrant); }
        void operator()(const acts::Propose& p) const {
            self.memory_.store(Intended{p.option, IntentionStatus::Pending});
        }
        void operator()(const acts::Reject& r) const {
            if (r.rejected.actor == self.id_) self.rejected_.insert(r.rejected.piece);
            const auto& offer = self.last_offer_;
            if (r.counter && offer && offer->option == r.rejected && offer->score) {
                self.counter_floor_[r.counter->option_id] = *offer->score;
            }
            if (r.counter) self.memory_.store(Intended{*r.counter, IntentionStatus::Pending});
        }
        void operator()(const acts::Accept& acc) const { self.commit(acc.option); }
    };
    std::visit(Visitor{*this}, a.content);
}

void Agent::note_sent(const CommunicativeAct& a) {
    if (!options_.speaker_stores_own_acts) return;
    if (const auto* s = std::get_if<acts::Say>(&a.content)) {
        memory_.store(s->warrant);
    } else if (const auto* p = std::get_if<acts::Propose>(&a.content)) {
        memory_.store(Intended{p->option, IntentionStatus::Pending});
    } else if (const auto* r = std::get_if<acts::Reject>(&a.content); r != nullptr && r->counter) {
        memory_.store(Intended{*r->counter, IntentionStatus::Pending});
    }
}

void Agent::commit(const PutOption& option) {
    if (!used_.insert(option.piece).second) return;
    room_fill_[index_of(option.room)] += 1;
    if (options_.store_mutual_intentions) {
        memory_.store(Intended{option, IntentionStatus::Mutual});
    }
}

}  // namespace designworld
