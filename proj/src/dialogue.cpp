#include "designworld/dialogue.hpp"

#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace designworld {

namespace {

constexpr std::size_t kMaxActs = 100000;

class Engine {
public:
    Engine(const World& world, const DialogueConfig& config, std::uint64_t seed)
        : world_(world),
          config_(config),
          agents_{Agent(AgentId::A, config.strategy_a, config.radius, world, seed, config.agent),
                  Agent(AgentId::B, config.strategy_b, config.radius, world, seed, config.agent)} {
        result_.plan = DesignPlan(world.config.room_capacity);
    }

    DialogueResult run() {
        emit(CommunicativeAct{AgentId::A, AgentId::B, acts::Open{}});
        AgentId holder = AgentId::A;

        while (auto room = result_.plan.current_room()) {
            auto options = agent(holder).generate_options(*room);
            if (options.empty()) {
                holder = other(holder);
                options = agent(holder).generate_options(*room);
                if (options.empty()) break;
            }
            holder = negotiate(holder, options.front());
            if (result_.transcript.size() > kMaxActs) {
                throw std::logic_error("dialogue exceeded the act limit");
            }
        }
        emit(CommunicativeAct{holder, other(holder), acts::Close{}});
        return finish();
    }

private:
    Agent& agent(AgentId id) { return agents_[index_of(id)]; }

    void emit(const CommunicativeAct& act) {
        result_.transcript.push_back(act);
        auto& tally = result_.per_agent[index_of(act.sender)];
        tally.messages += 1;
        if (const auto* say = std::get_if<acts::Say>(&act.content)) {
            tally.warrants += 1;
            said_[say->warrant.piece] = say->warrant.points;
        } else if (std::holds_alternative<acts::Propose>(act.content)) {
            tally.proposals += 1;
            result_.proposals += 1;
        } else if (const auto* rej = std::get_if<acts::Reject>(&act.content)) {
            if (rej->counter) {
                tally.proposals += 1;
                result_.counter_proposals += 1;
            } else {
                result_.precondition_rejections += 1;
            }
        }
        agent(act.addressee).incorporate(act);
        agent(act.sender).note_sent(act);
    }

    void emit_all(const std::vector<CommunicativeAct>& acts) {
        for (const auto& a : acts) emit(a);
    }

    // A Score belief counts toward agreement if it was said during the
    // current proposal segment or is salient right now. Probing is free.
    std::optional<int> warrant_belief(AgentId who, PieceId piece) const {
        if (auto it = said_.find(piece); it != said_.end()) return it->second;
        return agents_[index_of(who)].probe_score(piece);
    }

    bool warrant_matched(const PutOption& option) const {
        const auto a = warrant_belief(AgentId::A, option.piece);
        const auto b = warrant_belief(AgentId::B, option.piece);
        return a && b && *a == *b;
    }

    // One proposal segment: the proposal, any chain of counter-proposals, and
    // its resolution. Returns the agent holding the floor afterwards.
    AgentId negotiate(AgentId proposer, const RankedOption& head) {
        using Kind = DeliberationOutcome::Kind;
        said_.clear();
        agent(AgentId::A).begin_segment();
        agent(AgentId::B).begin_segment();
        emit_all(agent(proposer).make_proposal(head, other(proposer)));
        PutOption pending = head.option;

        while (true) {
            const AgentId hearer = other(pending.actor);
            const auto outcome = agent(hearer).deliberate(pending);
            result_.per_agent[index_of(hearer)].proposal_lookup_steps += outcome.proposal_steps;

            switch (outcome.kind) {
                case Kind::AcceptIt:
                    accept(hearer, pending);
                    return hearer;
                case Kind::RejectPrecondition:
                    emit_all(agent(hearer).make_rejection(pending, outcome, pending.actor));
                    return hearer;
                case Kind::RejectWithCounter:
                    emit_all(agent(hearer).make_rejection(pending, outcome, pending.actor));
                    if (++rejections_[pending.option_id] > config_.livelock_bound) {
                        agent(AgentId::A).block(pending.piece);
                        agent(AgentId::B).block(pending.piece);
                        result_.log.push_back(fmt::format("livelock guard: option-{} ({}) rejected {} times, skipped",
                                                          pending.option_id, world_.piece(pending.piece).label,
                                                          rejections_[pending.option_id]));
                    }
                    pending = outcome.counter->option;
                    break;
            }
            if (result_.transcript.size() > kMaxActs) {
                throw std::logic_error("dialogue exceeded the act limit");
            }
        }
    }

    void accept(AgentId hearer, const PutOption& option) {
        result_.ledger.record(option, warrant_matched(option));
        result_.plan.add(option, world_.piece(option.piece).points);
        if (config_.explicit_accept) {
            emit(CommunicativeAct{hearer, option.actor, acts::Accept{option}});
            agent(hearer).commit(option);
        } else {
            agent(hearer).charge_inference();
            result_.implicit_acceptances += 1;
            agent(AgentId::A).commit(option);
            agent(AgentId::B).commit(option);
        }
        rejections_.clear();
    }

    DialogueResult finish() {
        for (std::size_t i = 0; i < agents_.size(); ++i) {
            auto& tally = result_.per_agent[i];
            tally.inferences = agents_[i].inferences();
            tally.retrieval_steps = agents_[i].retrieval_steps();
            tally.warrant_fallbacks = agents_[i].warrant_fallbacks();
            result_.counters.messages += tally.messages;
            result_.counters.inferences += tally.inferences;
            result_.counters.retrieval_steps += tally.retrieval_steps;
            if (tally.warrant_fallbacks > 0) {
                result_.log.push_back(fmt::format("agent {} proposed {} option(s) without a retrievable warrant",
                                                  to_string(agents_[i].id()), tally.warrant_fallbacks));
            }
        }
        result_.raw_score = raw_score(config_.task, result_.plan, result_.ledger);
        result_.performance = performance(result_.raw_score, result_.counters, config_.costs);
        return std::move(result_);
    }

    const World& world_;
    const DialogueConfig& config_;
    std::array<Agent, 2> agents_;
    DialogueResult result_;
    std::map<PieceId, int> said_;
    std::map<int, int> rejections_;
};

std::string option_ref(const PutOption& o, const World& world) {
    return fmt::format("option-{}/{}", o.option_id, world.piece(o.piece).label);
}

}  // namespace

void CostModel::validate() const {
    if (!(commcost >= 0.0 && infcost >= 0.0 && retcost >= 0.0)) {
        throw std::invalid_argument("cost parameters must be non-negative");
    }
}

double performance(int raw_score, const DialogueCounters& c, const CostModel& costs) {
    return static_cast<double>(raw_score) - costs.commcost * static_cast<double>(c.messages) -
           costs.infcost * static_cast<double>(c.inferences) -
           costs.retcost * static_cast<double>(c.retrieval_steps);
}

DialogueResult run_dialogue(const World& world, const DialogueConfig& config, std::uint64_t seed) {
    config.costs.validate();
    return Engine(world, config, seed).run();
}

std::string format_act(std::size_t turn, const CommunicativeAct& act, const World& world) {
    struct Visitor {
        const World& world;
        std::pair<std::string, std::string> operator()(const acts::Open&) const { return {"-", "-"}; }
        std::pair<std::string, std::string> operator()(const acts::Close&) const { return {"-", "-"}; }
        std::pair<std::string, std::string> operator()(const acts::Propose& p) const {
            return {option_ref(p.option, world), to_string(p.option.room)};
        }
        std::pair<std::string, std::string> operator()(const acts::Say& s) const {
            return {option_ref(s.about, world), fmt::format("score={}", s.warrant.points)};
        }
        std::pair<std::string, std::string> operator()(const acts::Reject& r) const {
            if (!r.counter) return {option_ref(r.rejected, world), "precondition"};
            return {option_ref(r.rejected, world),
                    fmt::format("counter={} {}", option_ref(*r.counter, world), to_string(r.counter->room))};
        }
        std::pair<std::string, std::string> operator()(const acts::Accept& a) const {
            return {option_ref(a.option, world), to_string(a.option.room)};
        }
    };
    const auto [target, payload] = std::visit(Visitor{world}, act.content);
    return fmt::format("{} | {} | {} | {} | {}", turn, to_string(act.sender), act.type_name(), target, payload);
}

std::string format_transcript(const DialogueResult& result, const World& world) {
    std::string out;
    for (std::size_t i = 0; i < result.transcript.size(); ++i) {
        out += format_act(i + 1, result.transcript[i], world);
        out += '\n';
    }
    return out;
}

std::string csv_header() {
    return "seed,strategy_a,strategy_b,radius,task,commcost,infcost,retcost,raw,messages,inferences,"
           "retrieval_steps,performance";
}

std::string csv_row(std::uint64_t seed, const DialogueConfig& config, const DialogueResult& r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{:.4f}", seed, to_string(config.strategy_a),
                       to_string(config.strategy_b), config.radius.value(), to_string(config.task),
                       config.costs.commcost, config.costs.infcost, config.costs.retcost, r.raw_score,
                       r.counters.messages, r.counters.inferences, r.counters.retrieval_steps, r.performance);
}

}  // namespace designworld
