#include "lsimamab/incentive.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lsimamab {

namespace {

// (sqrt(2) - sqrt(3/2))^2: the spread between the elimination radius and the
// concentration radius, which is what makes the gap bracket two-sided.
const double kRadiusSpreadSq =
    (std::sqrt(2.0) - std::sqrt(1.5)) * (std::sqrt(2.0) - std::sqrt(1.5));

double one_plus_sqrt_b_sq(double threshold) {
    if (!(threshold >= 1.0))
        throw std::invalid_argument("incentive: balance threshold must be at least 1");
    const double r = 1.0 + std::sqrt(threshold);
    return r * r;
}

void require_positive_count(long long count, const char* what) {
    if (count <= 0) throw std::logic_error(std::string(what) + ": count must be positive");
}

}  // namespace

double compensation_unit(long long final_count, double log_horizon, double threshold) {
    require_positive_count(final_count, "compensation_unit");
    return std::sqrt(8.0 * one_plus_sqrt_b_sq(threshold) * log_horizon /
                     static_cast<double>(final_count));
}

double cost_unit(long long final_count, double log_horizon, double threshold) {
    require_positive_count(final_count, "cost_unit");
    return std::sqrt(kRadiusSpreadSq * kRadiusSpreadSq * log_horizon /
                     (128.0 * one_plus_sqrt_b_sq(threshold) * static_cast<double>(final_count)));
}

double compute_compensation(const AgentLedger& ledger, std::span<const long long> final_counts,
                            std::span<const std::uint8_t> active, double log_horizon,
                            double threshold) {
    double total = 0.0;
    for (std::size_t i = 0; i < final_counts.size(); ++i) {
        if (active[i]) continue;
        if (final_counts[i] <= 0)
            throw std::logic_error(
                "compute_compensation: eliminated arm with zero broadcasts; elimination requires "
                "at least one pair");
        const long long pulls = ledger.explore_counts[i] + ledger.commit_counts[i];
        if (pulls == 0) continue;
        total += static_cast<double>(pulls) *
                 compensation_unit(final_counts[i], log_horizon, threshold);
    }
    return total;
}

double compute_compensation(const AgentLedger& ledger, const PublicBoard& board,
                            double threshold) {
    return compute_compensation(ledger, board.counts(), board.active_flags(),
                                board.log_horizon(), threshold);
}

double compute_cost(std::span<const long long> final_counts, std::span<const std::uint8_t> active,
                    double log_horizon, double threshold) {
    double total = 0.0;
    for (std::size_t i = 0; i < final_counts.size(); ++i) {
        if (active[i] || final_counts[i] == 0) continue;
        total += static_cast<double>(final_counts[i]) *
                 cost_unit(final_counts[i], log_horizon, threshold);
    }
    return total;
}

double compute_cost(const PublicBoard& board, double threshold) {
    return compute_cost(board.counts(), board.active_flags(), board.log_horizon(), threshold);
}

double compute_cost_excluding_own(const AgentLedger& ledger,
                                  std::span<const long long> final_counts,
                                  std::span<const std::uint8_t> active, double log_horizon,
                                  double threshold) {
    double total = 0.0;
    for (std::size_t i = 0; i < final_counts.size(); ++i) {
        if (active[i] || final_counts[i] == 0) continue;
        const long long received = final_counts[i] - ledger.explore_counts[i];
        if (received <= 0) continue;
        total += static_cast<double>(received) * cost_unit(final_counts[i], log_horizon, threshold);
    }
    return total;
}

DeltaBracket delta_bracket_log(long long count, double log_horizon, double threshold) {
    require_positive_count(count, "delta_bracket");
    const double n = static_cast<double>(count);
    DeltaBracket b;
    b.lower = std::sqrt(kRadiusSpreadSq * log_horizon / n);
    b.upper = std::sqrt(8.0 * one_plus_sqrt_b_sq(threshold) * log_horizon / n);
    return b;
}

DeltaBracket delta_bracket(long long count, long long horizon, double threshold) {
    if (horizon < 2) throw std::invalid_argument("delta_bracket: horizon must be at least 2");
    return delta_bracket_log(count, std::log(static_cast<double>(horizon)), threshold);
}

long long ucb_pull_floor_log(double gap, double log_horizon) {
    if (!(gap > 0.0)) throw std::invalid_argument("ucb_pull_floor: gap must be positive");
    return static_cast<long long>(std::ceil(kRadiusSpreadSq * log_horizon / (4.0 * gap * gap)));
}

long long ucb_pull_floor(double gap, long long horizon) {
    if (horizon < 2) throw std::invalid_argument("ucb_pull_floor: horizon must be at least 2");
    return ucb_pull_floor_log(gap, std::log(static_cast<double>(horizon)));
}

bool ir_horizon_condition(const ArmModel& model, long long horizon) {
    const double gap_min = model.min_positive_gap();
    if (gap_min <= 0.0) return false;
    const double t = static_cast<double>(horizon);
    const double log_t = std::log(t);
    const double g2 = gap_min * gap_min;
    return t / (log_t * log_t) > static_cast<double>(model.n_arms()) / (4.0 * g2 * g2);
}

IrReport check_ir(const IncentiveOutcome& outcome, double ucb_regret, const ArmModel& model,
                  long long horizon) {
    IrReport report;
    report.horizon_condition_met = ir_horizon_condition(model, horizon);
    report.verdict.resize(outcome.raw_regret.size());
    for (std::size_t m = 0; m < outcome.raw_regret.size(); ++m) {
        const double relative =
            outcome.raw_regret[m] - outcome.compensation[m] + outcome.cost[m] - ucb_regret;
        report.verdict[m] = relative <= 0.0;
    }
    return report;
}

}  // namespace lsimamab
