#pragma once

#include <vector>

#include "lsimamab/rng.hpp"

namespace lsimamab {

enum class DistKind { bernoulli, deterministic, uniform_bounded };

// True reward model for the N arms. Every mean lies in [0,1] and every kind
// has support bounded on [0,1].
struct ArmModel {
    std::vector<double> means;
    DistKind dist = DistKind::bernoulli;
    std::vector<double> lo;  // uniform_bounded only, per arm
    std::vector<double> hi;

    int n_arms() const { return static_cast<int>(means.size()); }
    double best_mean() const;
    double gap(int arm) const;        // best mean minus this arm's mean
    double min_positive_gap() const;  // 0 when every arm is optimal

    void validate() const;  // throws std::invalid_argument

    static ArmModel bernoulli_arms(std::vector<double> means);
    static ArmModel deterministic_arms(std::vector<double> means);
    static ArmModel uniform_arms(std::vector<double> lo, std::vector<double> hi);
};

// One draw from the arm's reward distribution; deterministic given the stream
// state. Throws std::out_of_range for a bad arm index.
double sample_reward(const ArmModel& model, int arm, Rng& rng);

}  // namespace lsimamab
