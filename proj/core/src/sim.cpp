#include "lsimamab/sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "internal/format.hpp"
#include "internal/parallel.hpp"

namespace lsimamab {

namespace {

// Salt for the paired single-agent baseline stream, so it is independent of
// the collaboration run but still a pure function of the run seed.
constexpr std::uint64_t kBaselineSalt = 0x2ecb;

constexpr double kEuler = 2.718281828459045235;

}  // namespace

void RunConfig::validate() const {
    model.validate();
    sharing.validate(model.n_arms());
    if (horizon < 2) throw std::invalid_argument("RunConfig: horizon must be at least 2");
    if (!(threshold >= 1.0)) throw std::invalid_argument("RunConfig: threshold must be at least 1");
}

void JsonlTraceSink::on_pull(long long round, int agent, int arm, ActionKind kind, double reward,
                             std::span<const long long> post_counts) {
    std::string line;
    line.reserve(96 + 8 * post_counts.size());
    line += "{\"round\":";
    line += internal::format_int(round);
    line += ",\"agent\":";
    line += internal::format_int(agent);
    line += ",\"arm\":";
    line += internal::format_int(arm);
    line += ",\"kind\":\"";
    line += kind == ActionKind::explore ? "explore" : "commit";
    line += "\",\"reward\":";
    line += internal::format_shortest(reward);
    line += ",\"counts\":[";
    for (std::size_t i = 0; i < post_counts.size(); ++i) {
        if (i > 0) line += ',';
        line += internal::format_int(post_counts[i]);
    }
    line += "]}\n";
    out_ << line;
}

double theorem1_bound_value(const ArmModel& model, int n_agents, double threshold,
                            long long horizon) {
    const double log_t = std::log(static_cast<double>(horizon));
    const double r = 1.0 + std::sqrt(threshold);
    const double best = model.best_mean();
    const int n = model.n_arms();
    double bound = 2.0 * static_cast<double>(n_agents) * n;
    const double gap_min = model.min_positive_gap();
    if (gap_min > 0.0) {
        for (double mu : model.means) {
            const double gap = best - mu;
            if (gap > 0.0) bound += 8.0 * r * r * log_t / gap;
        }
        bound += 4.0 * kEuler * static_cast<double>(n_agents) * n * n / gap_min;
    }
    return bound;
}

RunResult simulate(const RunConfig& config, TraceSink* trace) {
    config.validate();
    const int n = config.model.n_arms();
    const int n_agents = config.sharing.n_agents();
    const long long horizon = config.horizon;
    const double best = config.model.best_mean();
    const bool diag = config.diagnostics_enabled;

    std::vector<double> gaps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) gaps[static_cast<std::size_t>(i)] = best - config.model.means[static_cast<std::size_t>(i)];

    PublicBoard board(n, horizon);
    const double log_t = board.log_horizon();
    const double dev_budget = 1.5 * log_t;

    std::vector<AgentLedger> ledgers(static_cast<std::size_t>(n_agents));
    for (auto& l : ledgers) {
        l.explore_counts.assign(static_cast<std::size_t>(n), 0);
        l.commit_counts.assign(static_cast<std::size_t>(n), 0);
    }
    // Unshared commit samples, flattened agent-major. Only an agent's own
    // commit target selection ever reads them.
    std::vector<long long> priv_counts(static_cast<std::size_t>(n_agents) * n, 0);
    std::vector<double> priv_sums(static_cast<std::size_t>(n_agents) * n, 0.0);

    std::vector<std::optional<long long>> eliminated_at(static_cast<std::size_t>(n));
    const std::vector<int> share_sizes = config.sharing.share_set_sizes(n);

    Rng rng(config.seed);
    long long shared_pairs = 0;
    bool good_event = true;
    bool min_count_ok = true;

    std::uint64_t checked_version = std::numeric_limits<std::uint64_t>::max();
    auto refresh_elimination = [&](long long round) {
        if (board.version() == checked_version) return;
        for (int arm : board.run_elimination())
            eliminated_at[static_cast<std::size_t>(arm)] = round;
        checked_version = board.version();
    };

    long long t = 1;
    for (; t <= horizon; ++t) {
        // Once a single arm remains nothing can change: no agent explores, no
        // broadcast lands, every commit targets the survivor. The tail is
        // closed-form, so skip it unless a trace wants every pull.
        if (board.active_count() == 1 && trace == nullptr) break;

        if (diag && min_count_ok && board.active_count() > 1) {
            // The pull-count floor applies only while every active arm has a
            // sharer. Integer form of min >= t/N - 1.
            bool covered = true;
            long long min_count = std::numeric_limits<long long>::max();
            for (int i = 0; i < n; ++i) {
                if (!board.is_active(i)) continue;
                if (share_sizes[static_cast<std::size_t>(i)] == 0) {
                    covered = false;
                    break;
                }
                min_count = std::min(min_count, board.count(i));
            }
            if (covered && min_count * n + n < t) min_count_ok = false;
        }

        for (int agent = 0; agent < n_agents; ++agent) {
            refresh_elimination(t);
            const auto offset = static_cast<std::size_t>(agent) * static_cast<std::size_t>(n);
            const PrivateView view{
                std::span<const long long>(priv_counts).subspan(offset, static_cast<std::size_t>(n)),
                std::span<const double>(priv_sums).subspan(offset, static_cast<std::size_t>(n))};
            const ActionDecision decision = balanced_etc_decide(
                board, config.sharing.profiles[static_cast<std::size_t>(agent)], config.threshold,
                &view);
            const double reward = sample_reward(config.model, decision.arm, rng);
            const auto arm_idx = static_cast<std::size_t>(decision.arm);
            if (decision.kind == ActionKind::explore) {
                board.record_broadcast(decision.arm, reward);
                ++shared_pairs;
                ++ledgers[static_cast<std::size_t>(agent)].explore_counts[arm_idx];
                if (diag && good_event) {
                    const double dev = board.sum(decision.arm) /
                                           static_cast<double>(board.count(decision.arm)) -
                                       config.model.means[arm_idx];
                    if (dev * dev * static_cast<double>(board.count(decision.arm)) > dev_budget)
                        good_event = false;
                }
            } else {
                priv_counts[offset + arm_idx] += 1;
                priv_sums[offset + arm_idx] += reward;
                ++ledgers[static_cast<std::size_t>(agent)].commit_counts[arm_idx];
            }
            ledgers[static_cast<std::size_t>(agent)].raw_regret += gaps[arm_idx];
            if (trace != nullptr)
                trace->on_pull(t, agent, decision.arm, decision.kind, reward, board.counts());
        }
    }

    if (t <= horizon) {
        // Fast-forwarded tail: every agent commits to the sole active arm for
        // the remaining rounds. Reward draws are skipped; nothing reads them.
        int sole = -1;
        for (int i = 0; i < n; ++i)
            if (board.is_active(i)) sole = i;
        const long long remaining = horizon - t + 1;
        const double tail_regret = gaps[static_cast<std::size_t>(sole)] * static_cast<double>(remaining);
        for (auto& ledger : ledgers) {
            ledger.commit_counts[static_cast<std::size_t>(sole)] += remaining;
            ledger.raw_regret += tail_regret;
        }
    }

    // Settlement reads the final board, with the last broadcasts folded in
    // even when no agent turn followed them.
    refresh_elimination(horizon);

    RunResult result;
    result.per_agent_regret.resize(static_cast<std::size_t>(n_agents));
    result.eliminated_regret.assign(static_cast<std::size_t>(n_agents), 0.0);
    for (int m = 0; m < n_agents; ++m) {
        result.per_agent_regret[static_cast<std::size_t>(m)] = ledgers[static_cast<std::size_t>(m)].raw_regret;
        result.overall_regret += ledgers[static_cast<std::size_t>(m)].raw_regret;
    }
    result.shared_pairs_total = shared_pairs;
    result.eliminated_at = std::move(eliminated_at);
    result.final_counts.assign(board.counts().begin(), board.counts().end());
    result.final_active.assign(board.active_flags().begin(), board.active_flags().end());

    // Paired single-agent baseline on its own derived stream.
    Rng baseline_rng(derive_seed(config.seed, kBaselineSalt));
    const UcbRunResult baseline = run_ucb_baseline(config.model, horizon, baseline_rng);
    result.ucb_regret = baseline.regret;

    IncentiveOutcome& inc = result.incentive;
    inc.raw_regret.resize(static_cast<std::size_t>(n_agents));
    inc.compensation.resize(static_cast<std::size_t>(n_agents));
    inc.cost.resize(static_cast<std::size_t>(n_agents));
    inc.relative_regret.resize(static_cast<std::size_t>(n_agents));
    const double shared_cost = compute_cost(board, config.threshold);
    for (int m = 0; m < n_agents; ++m) {
        const auto k = static_cast<std::size_t>(m);
        const AgentLedger& ledger = ledgers[k];
        inc.raw_regret[k] = ledger.raw_regret;
        inc.compensation[k] = compute_compensation(ledger, board, config.threshold);
        inc.cost[k] = config.exclude_own_shares
                          ? compute_cost_excluding_own(ledger, board.counts(),
                                                       board.active_flags(), log_t,
                                                       config.threshold)
                          : shared_cost;
        inc.relative_regret[k] =
            ledger.raw_regret - inc.compensation[k] + inc.cost[k] - baseline.regret;
        inc.controller_profit += inc.cost[k] - inc.compensation[k];
        for (int i = 0; i < n; ++i) {
            const auto a = static_cast<std::size_t>(i);
            if (board.is_active(i)) continue;
            result.eliminated_regret[k] += static_cast<double>(ledger.explore_counts[a] +
                                                               ledger.commit_counts[a]) *
                                           gaps[a];
        }
    }

    Diagnostics& d = result.diagnostics;
    d.good_event_held = good_event;
    d.min_count_invariant_held = min_count_ok;
    d.baseline_good_event_held = baseline.good_event_held;
    d.theorem1_bound_value =
        theorem1_bound_value(config.model, n_agents, config.threshold, horizon);
    d.all_suboptimal_eliminated = true;
    d.exploration_caps_held = true;
    const double r = 1.0 + std::sqrt(config.threshold);
    for (int i = 0; i < n; ++i) {
        const auto a = static_cast<std::size_t>(i);
        if (gaps[a] <= 0.0) continue;
        if (board.is_active(i)) d.all_suboptimal_eliminated = false;
        const double cap = std::ceil(8.0 * r * r * log_t / (gaps[a] * gaps[a]));
        if (static_cast<double>(board.count(i)) > cap) d.exploration_caps_held = false;
    }
    return result;
}

std::vector<RunResult> replicate(const RunConfig& tmpl, int n_reps, std::uint64_t seed_base) {
    if (n_reps < 1) throw std::invalid_argument("replicate: needs at least one replication");
    std::vector<RunResult> results(static_cast<std::size_t>(n_reps));
    internal::parallel_for_index(n_reps, [&](int i) {
        RunConfig cfg = tmpl;
        cfg.seed = seed_base + static_cast<std::uint64_t>(i);
        results[static_cast<std::size_t>(i)] = simulate(cfg);
    });
    return results;
}

}  // namespace lsimamab
