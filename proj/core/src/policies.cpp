#include "lsimamab/policies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lsimamab {

ActionDecision balanced_etc_decide(const PublicBoard& board, const AgentProfile& profile,
                                   double threshold, const PrivateView* priv) {
    const int n = board.n_arms();

    if (board.active_count() > 1) {
        // Least-broadcast active shared arm; shared_arms is sorted, so a
        // strict < keeps the lowest index on ties.
        long long min_shared = -1;
        int explore_target = -1;
        for (int arm : profile.shared_arms) {
            if (!board.is_active(arm)) continue;
            const long long c = board.count(arm);
            if (min_shared < 0 || c < min_shared) {
                min_shared = c;
                explore_target = arm;
            }
        }
        if (explore_target >= 0) {
            long long min_all = -1;
            for (int i = 0; i < n; ++i) {
                if (!board.is_active(i)) continue;
                const long long c = board.count(i);
                if (min_all < 0 || c < min_all) min_all = c;
            }
            // 0/0 counts as perfectly balanced; a positive count against an
            // untouched arm is infinitely imbalanced.
            double ratio;
            if (min_all == 0)
                ratio = min_shared == 0 ? 1.0 : std::numeric_limits<double>::infinity();
            else
                ratio = static_cast<double>(min_shared) / static_cast<double>(min_all);
            if (ratio <= threshold) return {explore_target, ActionKind::explore};
        }
    }

    // Commit: best merged empirical mean over the active set; an arm with no
    // data anywhere is taken at the optimistic top of the reward range.
    int best_arm = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        if (!board.is_active(i)) continue;
        long long c = board.count(i);
        double s = board.sum(i);
        if (priv != nullptr) {
            c += priv->counts[static_cast<std::size_t>(i)];
            s += priv->sums[static_cast<std::size_t>(i)];
        }
        const double value = c > 0 ? s / static_cast<double>(c) : 1.0;
        if (value > best_value) {
            best_value = value;
            best_arm = i;
        }
    }
    return {best_arm, ActionKind::commit};
}

UcbState UcbState::init(int n_arms, long long horizon) {
    if (n_arms < 1) throw std::invalid_argument("UcbState: needs at least one arm");
    if (horizon < 2) throw std::invalid_argument("UcbState: horizon must be at least 2");
    UcbState s;
    s.horizon = horizon;
    s.log_horizon = std::log(static_cast<double>(horizon));
    s.counts.assign(static_cast<std::size_t>(n_arms), 0);
    s.sums.assign(static_cast<std::size_t>(n_arms), 0.0);
    return s;
}

int ucb_decide(const UcbState& state) {
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.counts.size(); ++i) {
        double value;
        if (state.counts[i] == 0) {
            value = std::numeric_limits<double>::infinity();
        } else {
            const double n = static_cast<double>(state.counts[i]);
            value = state.sums[i] / n + std::sqrt(2.0 * state.log_horizon / n);
        }
        if (value > best_value) {
            best_value = value;
            best = static_cast<int>(i);
        }
    }
    return best;
}

UcbRunResult run_ucb_baseline(const ArmModel& model, long long horizon, Rng& rng) {
    model.validate();
    UcbState state = UcbState::init(model.n_arms(), horizon);
    const double best = model.best_mean();
    const double dev_budget = 1.5 * state.log_horizon;

    UcbRunResult out;
    out.pull_counts.assign(static_cast<std::size_t>(model.n_arms()), 0);
    for (long long t = 0; t < horizon; ++t) {
        const int arm = ucb_decide(state);
        const double reward = sample_reward(model, arm, rng);
        const auto i = static_cast<std::size_t>(arm);
        state.counts[i] += 1;
        state.sums[i] += reward;
        state.t += 1;
        out.regret += best - model.means[i];
        if (out.good_event_held) {
            const double dev =
                state.sums[i] / static_cast<double>(state.counts[i]) - model.means[i];
            if (dev * dev * static_cast<double>(state.counts[i]) > dev_budget)
                out.good_event_held = false;
        }
    }
    out.pull_counts = state.counts;
    return out;
}

}  // namespace lsimamab
