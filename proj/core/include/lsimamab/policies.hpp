#pragma once

#include <span>
#include <vector>

#include "lsimamab/arm_model.hpp"
#include "lsimamab/public_board.hpp"
#include "lsimamab/rng.hpp"
#include "lsimamab/sharing.hpp"

namespace lsimamab {

enum class ActionKind { explore, commit };

struct ActionDecision {
    int arm = 0;
    ActionKind kind = ActionKind::commit;
};

// An agent's own unshared samples (commit-step pulls). Merged with the public
// statistics for her commit target only; never used for exploration or
// elimination, which run on broadcast data alone.
struct PrivateView {
    std::span<const long long> counts;
    std::span<const double> sums;
};

/// One Balanced-ETC decision for an agent holding `profile`.
///
/// Explores if and only if more than one arm is active, the agent's shared
/// set intersects the active set, and her balance level is at most
/// `threshold`. The explore target is the least-broadcast arm in that
/// intersection; the commit target is the active arm with the highest merged
/// empirical mean, with unsampled arms treated optimistically as 1.0. Every
/// tie breaks toward the lowest arm index.
ActionDecision balanced_etc_decide(const PublicBoard& board, const AgentProfile& profile,
                                   double threshold, const PrivateView* priv = nullptr);

// Single-agent 2-UCB baseline state. The exploration bonus uses the fixed
// horizon: sqrt(2 log T / n).
struct UcbState {
    long long horizon = 0;
    double log_horizon = 0.0;
    std::vector<long long> counts;
    std::vector<double> sums;
    long long t = 0;

    static UcbState init(int n_arms, long long horizon);
};

// argmax of mean + bonus; unsampled arms have value +infinity, so every arm
// is pulled once before any repeats. Ties break toward the lowest index.
int ucb_decide(const UcbState& state);

struct UcbRunResult {
    double regret = 0.0;
    std::vector<long long> pull_counts;
    // |mean - mu| <= sqrt(1.5 log T / n) held at every update point.
    bool good_event_held = true;
};

// Simulates T pulls of 2-UCB on a private reward stream and returns the
// realized regret against the true means.
UcbRunResult run_ucb_baseline(const ArmModel& model, long long horizon, Rng& rng);

}  // namespace lsimamab
