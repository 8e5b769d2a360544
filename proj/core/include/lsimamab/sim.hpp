#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "lsimamab/arm_model.hpp"
#include "lsimamab/incentive.hpp"
#include "lsimamab/policies.hpp"
#include "lsimamab/sharing.hpp"

namespace lsimamab {

struct RunConfig {
    ArmModel model;
    SharingStructure sharing;
    long long horizon = 0;   // T, at least 2
    double threshold = 1.0;  // balance threshold B, at least 1
    std::uint64_t seed = 0;
    bool diagnostics_enabled = true;
    // Settle costs per pair received instead of per pair broadcast.
    bool exclude_own_shares = false;

    void validate() const;  // throws std::invalid_argument
};

// The two streaming flags (good event, count floor) are tracked only when
// RunConfig::diagnostics_enabled is set; the rest is end-of-run arithmetic.
struct Diagnostics {
    // |mean_i - mu_i| <= sqrt(1.5 log T / N_i) at every broadcast point.
    bool good_event_held = true;
    // min over active arms of N_i >= t/N - 1 at every round start while more
    // than one arm is active and every active arm has a sharer.
    bool min_count_invariant_held = true;
    // Final broadcast count of each sub-optimal arm is at most
    // ceil(8 (1+sqrt(B))^2 log T / gap^2).
    bool exploration_caps_held = true;
    bool all_suboptimal_eliminated = false;
    bool baseline_good_event_held = true;
    double theorem1_bound_value = 0.0;
};

// Receives one record per pull, in pull order.
class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void on_pull(long long round, int agent, int arm, ActionKind kind, double reward,
                         std::span<const long long> post_counts) = 0;
};

// Line-delimited JSON, one object per pull:
// {"round":..,"agent":..,"arm":..,"kind":"explore","reward":..,"counts":[..]}
class JsonlTraceSink final : public TraceSink {
public:
    explicit JsonlTraceSink(std::ostream& out) : out_(out) {}
    void on_pull(long long round, int agent, int arm, ActionKind kind, double reward,
                 std::span<const long long> post_counts) override;

private:
    std::ostream& out_;
};

struct RunResult {
    double overall_regret = 0.0;
    std::vector<double> per_agent_regret;
    // Share of each agent's regret from arms eliminated by T.
    std::vector<double> eliminated_regret;
    long long shared_pairs_total = 0;
    std::vector<std::optional<long long>> eliminated_at;  // 1-based round, per arm
    std::vector<long long> final_counts;                  // N_i(T)
    std::vector<std::uint8_t> final_active;               // A(T)
    double ucb_regret = 0.0;  // paired single-agent baseline on the same model
    IncentiveOutcome incentive;
    Diagnostics diagnostics;
};

/// Runs one full collaboration game: T rounds, agents acting sequentially
/// within each round. At her turn an agent folds in every broadcast so far
/// (including earlier agents in the same round), re-evaluates elimination,
/// decides, pulls, and broadcasts when exploring. The paired 2-UCB baseline
/// runs on a stream derived from the run seed, so the whole result is a pure
/// function of the config.
RunResult simulate(const RunConfig& config, TraceSink* trace = nullptr);

/// n_reps independent runs with seeds seed_base, seed_base+1, ... Results in
/// seed order; replications may execute on multiple threads.
std::vector<RunResult> replicate(const RunConfig& tmpl, int n_reps, std::uint64_t seed_base);

/// Closed-form ceiling on the mean overall regret:
///   sum over positive-gap arms of 8 (1+sqrt(B))^2 log T / gap
///   + 4 e M N^2 / gap_min + 2 M N.
/// Gap-dependent terms drop out when every arm is optimal.
double theorem1_bound_value(const ArmModel& model, int n_agents, double threshold,
                            long long horizon);

}  // namespace lsimamab
