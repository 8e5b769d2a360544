#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lsimamab {

/// Confidence half-width sqrt(2 log T / n). Returns +infinity for n == 0: an
/// arm with no data can neither be condemned nor condemn others.
double confidence_radius_log(long long count, double log_horizon);

/// Same, computing log on the fly. Requires horizon >= 2 so the log is
/// positive.
double confidence_radius(long long count, long long horizon);

/// Globally shared statistics built from broadcast arm-reward pairs, plus the
/// elimination rule and the balance level.
///
/// Invariants: counts and sums only grow; empirical means stay in [0,1];
/// an arm removed from the active set is never re-admitted; elimination
/// never empties the active set.
class PublicBoard {
public:
    PublicBoard(int n_arms, long long horizon);

    int n_arms() const { return static_cast<int>(counts_.size()); }
    long long horizon() const { return horizon_; }
    double log_horizon() const { return log_horizon_; }

    long long count(int arm) const { return counts_[static_cast<std::size_t>(arm)]; }
    double sum(int arm) const { return sums_[static_cast<std::size_t>(arm)]; }
    double empirical_mean(int arm) const;  // requires count(arm) > 0

    bool is_active(int arm) const { return active_[static_cast<std::size_t>(arm)] != 0; }
    int active_count() const { return active_count_; }
    std::vector<int> active_arms() const;  // ascending

    std::span<const long long> counts() const { return counts_; }
    std::span<const std::uint8_t> active_flags() const { return active_; }

    // Bumped once per broadcast; lets callers skip redundant elimination scans.
    std::uint64_t version() const { return version_; }

    // Folds one broadcast pair into the shared statistics. Only active arms
    // may be broadcast; anything else is a protocol violation.
    void record_broadcast(int arm, double reward);

    // Removes every active arm whose upper confidence bound is at most the
    // largest lower confidence bound across the active set. Unsampled arms
    // carry bounds (-inf, +inf). Returns the newly eliminated arms, ascending.
    std::vector<int> run_elimination();

    // min_{i in active & shared} count_i / min_{j in active} count_j, with the
    // 0/0 case defined as 1 (at the very first step every covering agent may
    // explore) and x/0 as +infinity. The intersection must be nonempty.
    double balance_level(std::span<const int> shared_arms) const;

private:
    std::vector<long long> counts_;
    std::vector<double> sums_;
    std::vector<std::uint8_t> active_;
    int active_count_ = 0;
    long long horizon_ = 0;
    double log_horizon_ = 0.0;
    std::uint64_t version_ = 0;
};

}  // namespace lsimamab
