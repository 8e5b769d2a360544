#include "lsimamab/public_board.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lsimamab {

double confidence_radius_log(long long count, double log_horizon) {
    if (count <= 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(2.0 * log_horizon / static_cast<double>(count));
}

double confidence_radius(long long count, long long horizon) {
    if (horizon < 2) throw std::invalid_argument("confidence_radius: horizon must be at least 2");
    return confidence_radius_log(count, std::log(static_cast<double>(horizon)));
}

PublicBoard::PublicBoard(int n_arms, long long horizon) {
    if (n_arms < 1) throw std::invalid_argument("PublicBoard: needs at least one arm");
    if (horizon < 2) throw std::invalid_argument("PublicBoard: horizon must be at least 2");
    counts_.assign(static_cast<std::size_t>(n_arms), 0);
    sums_.assign(static_cast<std::size_t>(n_arms), 0.0);
    active_.assign(static_cast<std::size_t>(n_arms), 1);
    active_count_ = n_arms;
    horizon_ = horizon;
    log_horizon_ = std::log(static_cast<double>(horizon));
}

double PublicBoard::empirical_mean(int arm) const {
    const auto i = static_cast<std::size_t>(arm);
    if (counts_[i] <= 0)
        throw std::logic_error("PublicBoard: empirical mean of unsampled arm " +
                               std::to_string(arm));
    return sums_[i] / static_cast<double>(counts_[i]);
}

std::vector<int> PublicBoard::active_arms() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(active_count_));
    for (int i = 0; i < n_arms(); ++i)
        if (active_[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

void PublicBoard::record_broadcast(int arm, double reward) {
    if (arm < 0 || arm >= n_arms())
        throw std::out_of_range("record_broadcast: arm " + std::to_string(arm) + " out of range");
    const auto i = static_cast<std::size_t>(arm);
    if (!active_[i])
        throw std::logic_error("record_broadcast: arm " + std::to_string(arm) +
                               " was eliminated; broadcasting it violates the protocol");
    if (!(reward >= 0.0 && reward <= 1.0))
        throw std::invalid_argument("record_broadcast: reward outside [0,1]");
    counts_[i] += 1;
    sums_[i] += reward;
    ++version_;
}

std::vector<int> PublicBoard::run_elimination() {
    // Largest lower confidence bound across the active set. The arm attaining
    // it always survives: its upper bound exceeds its lower bound because the
    // radius is strictly positive.
    double max_lower = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_arms(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (!active_[k] || counts_[k] == 0) continue;
        const double mean = sums_[k] / static_cast<double>(counts_[k]);
        const double low = mean - confidence_radius_log(counts_[k], log_horizon_);
        if (low > max_lower) max_lower = low;
    }

    std::vector<int> removed;
    if (max_lower == -std::numeric_limits<double>::infinity()) return removed;
    for (int i = 0; i < n_arms(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (!active_[k] || counts_[k] == 0) continue;  // unsampled: upper bound +inf
        const double mean = sums_[k] / static_cast<double>(counts_[k]);
        const double up = mean + confidence_radius_log(counts_[k], log_horizon_);
        if (up <= max_lower) {
            active_[k] = 0;
            --active_count_;
            removed.push_back(i);
        }
    }
    return removed;
}

double PublicBoard::balance_level(std::span<const int> shared_arms) const {
    long long min_shared = -1;
    for (int arm : shared_arms) {
        const auto k = static_cast<std::size_t>(arm);
        if (!active_[k]) continue;
        if (min_shared < 0 || counts_[k] < min_shared) min_shared = counts_[k];
    }
    if (min_shared < 0)
        throw std::logic_error("balance_level: no shared arm is active");
    long long min_all = -1;
    for (int i = 0; i < n_arms(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (!active_[k]) continue;
        if (min_all < 0 || counts_[k] < min_all) min_all = counts_[k];
    }
    if (min_all == 0)
        return min_shared == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(min_shared) / static_cast<double>(min_all);
}

}  // namespace lsimamab
