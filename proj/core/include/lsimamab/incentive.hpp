#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsimamab/arm_model.hpp"
#include "lsimamab/public_board.hpp"

namespace lsimamab {

// Per-agent pull ledger for one run. explore_counts[i] is the number of times
// the agent pulled-and-broadcast arm i; commit_counts[i] the number of silent
// pulls. Together they sum to T over all arms at the end of a run.
struct AgentLedger {
    std::vector<long long> explore_counts;
    std::vector<long long> commit_counts;
    double raw_regret = 0.0;  // against true means
};

struct IncentiveOutcome {
    std::vector<double> raw_regret;       // R_m
    std::vector<double> compensation;     // Com_m, nonnegative
    std::vector<double> cost;             // Cost_m, nonnegative
    std::vector<double> relative_regret;  // R_m - Com_m + Cost_m - R_ucb
    double controller_profit = 0.0;       // sum(cost) - sum(compensation)
};

/// Settlement unit paid to an agent per pull of an arm eliminated with final
/// broadcast count n: sqrt(8 (1+sqrt(B))^2 log T / n). This is the upper end
/// of the gap bracket, so the payment covers the worst-case loss per pull.
double compensation_unit(long long final_count, double log_horizon, double threshold);

/// Settlement unit charged per broadcast pair of an arm eliminated with final
/// count n: sqrt((sqrt(2)-sqrt(3/2))^4 log T / (128 (1+sqrt(B))^2 n)).
/// Priced off the lower end of the gap bracket, deflated by the worst-case
/// ratio between balanced-exploration and single-agent 2-UCB pull counts.
double cost_unit(long long final_count, double log_horizon, double threshold);

/// End-of-run compensation: the agent's explore plus commit pulls of each
/// eliminated arm, each paid at compensation_unit. Arms still active pay
/// nothing. An eliminated arm with a zero broadcast count cannot occur
/// (elimination needs at least one pair) and raises std::logic_error.
double compute_compensation(const AgentLedger& ledger, std::span<const long long> final_counts,
                            std::span<const std::uint8_t> active, double log_horizon,
                            double threshold);
double compute_compensation(const AgentLedger& ledger, const PublicBoard& board, double threshold);

/// End-of-run cost, identical for every agent: all N_i(T) broadcast pairs of
/// each eliminated arm charged at cost_unit, the agent's own pairs included —
/// exactly as the settlement formula states it.
double compute_cost(std::span<const long long> final_counts, std::span<const std::uint8_t> active,
                    double log_horizon, double threshold);
double compute_cost(const PublicBoard& board, double threshold);

/// Variant that charges only pairs the agent *received*, excluding her own
/// broadcasts. Off by default; kept for sensitivity analysis.
double compute_cost_excluding_own(const AgentLedger& ledger, std::span<const long long> final_counts,
                                  std::span<const std::uint8_t> active, double log_horizon,
                                  double threshold);

struct DeltaBracket {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bracket for the true gap of an arm eliminated with final count n:
///   sqrt((sqrt(2)-sqrt(3/2))^2 log T / n) <= gap <= sqrt(8 (1+sqrt(B))^2 log T / n).
/// lower < upper always. Requires n >= 1.
DeltaBracket delta_bracket_log(long long count, double log_horizon, double threshold);
DeltaBracket delta_bracket(long long count, long long horizon, double threshold);

/// Floor on 2-UCB's pulls of an arm with the given positive gap under its
/// good event: ceil((sqrt(2)-sqrt(3/2))^2 log T / (4 gap^2)).
long long ucb_pull_floor_log(double gap, double log_horizon);
long long ucb_pull_floor(double gap, long long horizon);

struct IrReport {
    std::vector<bool> verdict;           // joining beat solo 2-UCB, per agent
    bool horizon_condition_met = false;  // T / log^2 T > N / (4 gap_min^4)
};

/// Individual-rationality verdicts: agent m passes when
/// R_m - Com_m + Cost_m - R_ucb <= 0. Also reports whether the horizon is
/// long enough for the guarantee to apply.
IrReport check_ir(const IncentiveOutcome& outcome, double ucb_regret, const ArmModel& model,
                  long long horizon);

bool ir_horizon_condition(const ArmModel& model, long long horizon);

}  // namespace lsimamab
