#include "lsimamab/arm_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lsimamab {

double ArmModel::best_mean() const {
    return *std::max_element(means.begin(), means.end());
}

double ArmModel::gap(int arm) const {
    return best_mean() - means.at(static_cast<std::size_t>(arm));
}

double ArmModel::min_positive_gap() const {
    const double best = best_mean();
    double g = 0.0;
    for (double mu : means) {
        const double d = best - mu;
        if (d > 0.0 && (g == 0.0 || d < g)) g = d;
    }
    return g;
}

void ArmModel::validate() const {
    if (means.empty()) throw std::invalid_argument("ArmModel: needs at least one arm");
    for (std::size_t i = 0; i < means.size(); ++i) {
        if (!(means[i] >= 0.0 && means[i] <= 1.0))
            throw std::invalid_argument("ArmModel: mean of arm " + std::to_string(i) +
                                        " outside [0,1]");
    }
    if (dist == DistKind::uniform_bounded) {
        if (lo.size() != means.size() || hi.size() != means.size())
            throw std::invalid_argument("ArmModel: uniform bounds must cover every arm");
        for (std::size_t i = 0; i < means.size(); ++i) {
            if (!(0.0 <= lo[i] && lo[i] <= hi[i] && hi[i] <= 1.0))
                throw std::invalid_argument("ArmModel: bad uniform bounds on arm " +
                                            std::to_string(i));
            if (std::abs((lo[i] + hi[i]) / 2.0 - means[i]) > 1e-12)
                throw std::invalid_argument("ArmModel: uniform midpoint differs from mean on arm " +
                                            std::to_string(i));
        }
    }
}

ArmModel ArmModel::bernoulli_arms(std::vector<double> means) {
    ArmModel m;
    m.means = std::move(means);
    m.dist = DistKind::bernoulli;
    m.validate();
    return m;
}

ArmModel ArmModel::deterministic_arms(std::vector<double> means) {
    ArmModel m;
    m.means = std::move(means);
    m.dist = DistKind::deterministic;
    m.validate();
    return m;
}

ArmModel ArmModel::uniform_arms(std::vector<double> lo, std::vector<double> hi) {
    ArmModel m;
    m.means.resize(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) m.means[i] = (lo[i] + hi[i]) / 2.0;
    m.lo = std::move(lo);
    m.hi = std::move(hi);
    m.dist = DistKind::uniform_bounded;
    m.validate();
    return m;
}

double sample_reward(const ArmModel& model, int arm, Rng& rng) {
    if (arm < 0 || arm >= model.n_arms())
        throw std::out_of_range("sample_reward: arm " + std::to_string(arm) + " out of range");
    const auto i = static_cast<std::size_t>(arm);
    switch (model.dist) {
        case DistKind::deterministic:
            return model.means[i];
        case DistKind::bernoulli:
            return rng.uniform01() < model.means[i] ? 1.0 : 0.0;
        case DistKind::uniform_bounded:
            return model.lo[i] + rng.uniform01() * (model.hi[i] - model.lo[i]);
    }
    throw std::logic_error("sample_reward: unreachable");
}

}  // namespace lsimamab
