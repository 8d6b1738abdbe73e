#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "designworld/agent.hpp"
#include "designworld/task.hpp"

namespace designworld {

struct CostModel {
    double commcost = 0.0;  // per message
    double infcost = 0.0;   // per inference
    double retcost = 0.0;   // per retrieval step

    void validate() const;
};

struct DialogueConfig {
    Strategy strategy_a = Strategy::AllImplicit;
    Strategy strategy_b = Strategy::AllImplicit;
    Radius radius{16.0};
    TaskKind task = TaskKind::Standard;
    CostModel costs;
    // Rejections of one option, without any acceptance in between, before
    // the option is dropped.
    int livelock_bound = 3;
    // Send an Accept act instead of accepting implicitly.
    bool explicit_accept = false;
    AgentOptions agent;
};

struct DialogueCounters {
    std::uint64_t messages = 0;
    std::uint64_t inferences = 0;
    std::uint64_t retrieval_steps = 0;
};

struct AgentTally {
    std::uint64_t messages = 0;
    std::uint64_t inferences = 0;
    std::uint64_t retrieval_steps = 0;
    std::uint64_t warrants = 0;       // Say acts emitted
    std::uint64_t proposals = 0;      // Propose acts plus counter-carrying Rejects
    std::uint64_t warrant_fallbacks = 0;
    // Steps spent locating the proposal's Score while deliberating.
    std::uint64_t proposal_lookup_steps = 0;
};

struct DialogueResult {
    DesignPlan plan;
    WarrantLedger ledger;
    std::vector<CommunicativeAct> transcript;
    std::vector<std::string> log;
    DialogueCounters counters;
    std::array<AgentTally, 2> per_agent{};
    std::uint64_t proposals = 0;         // Propose acts
    std::uint64_t counter_proposals = 0;  // Rejects carrying a counter
    std::uint64_t precondition_rejections = 0;
    std::uint64_t implicit_acceptances = 0;
    int raw_score = 0;
    double performance = 0.0;
};

// raw − commcost·messages − infcost·inferences − retcost·retrieval_steps
double performance(int raw_score, const DialogueCounters& counters, const CostModel& costs);

DialogueResult run_dialogue(const World& world, const DialogueConfig& config, std::uint64_t seed);

// "turn | sender | act-type | option-id/piece-label | payload"
std::string format_act(std::size_t turn, const CommunicativeAct& act, const World& world);
std::string format_transcript(const DialogueResult& result, const World& world);

std::string csv_header();
std::string csv_row(std::uint64_t seed, const DialogueConfig& config, const DialogueResult& result);

}  // namespace designworld
