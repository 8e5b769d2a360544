#include "lsimamab/sharing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lsimamab {

std::vector<int> SharingStructure::share_set_sizes(int n_arms) const {
    std::vector<int> sizes(static_cast<std::size_t>(n_arms), 0);
    for (const auto& p : profiles)
        for (int arm : p.shared_arms) ++sizes.at(static_cast<std::size_t>(arm));
    return sizes;
}

bool SharingStructure::fully_covered(int n_arms) const {
    const auto sizes = share_set_sizes(n_arms);
    return std::all_of(sizes.begin(), sizes.end(), [](int s) { return s > 0; });
}

void SharingStructure::validate(int n_arms) const {
    if (profiles.empty()) throw std::invalid_argument("SharingStructure: needs at least one agent");
    for (std::size_t m = 0; m < profiles.size(); ++m) {
        const auto& arms = profiles[m].shared_arms;
        if (!std::is_sorted(arms.begin(), arms.end()) ||
            std::adjacent_find(arms.begin(), arms.end()) != arms.end())
            throw std::invalid_argument("SharingStructure: shared arms of agent " +
                                        std::to_string(m) + " must be sorted and unique");
        for (int arm : arms)
            if (arm < 0 || arm >= n_arms)
                throw std::invalid_argument("SharingStructure: agent " + std::to_string(m) +
                                            " shares an arm outside [0," +
                                            std::to_string(n_arms) + ")");
    }
}

namespace {

void require_coverage_feasible(int n_arms, int n_agents) {
    if (n_arms < 1) throw std::invalid_argument("instance generator: needs at least one arm");
    if (n_agents < n_arms)
        throw std::invalid_argument(
            "instance generator: " + std::to_string(n_agents) + " agents cannot cover " +
            std::to_string(n_arms) + " arms");
}

SharingStructure from_single_arms(const std::vector<int>& arm_of_agent) {
    SharingStructure s;
    s.profiles.resize(arm_of_agent.size());
    for (std::size_t a = 0; a < arm_of_agent.size(); ++a) {
        s.profiles[a].agent_id = static_cast<int>(a);
        s.profiles[a].shared_arms = {arm_of_agent[a]};
    }
    return s;
}

}  // namespace

SharingStructure make_balanced_instance(int n_arms, int n_agents) {
    require_coverage_feasible(n_arms, n_agents);
    std::vector<int> arm_of_agent(static_cast<std::size_t>(n_agents));
    for (int a = 0; a < n_agents; ++a) arm_of_agent[static_cast<std::size_t>(a)] = a % n_arms;
    return from_single_arms(arm_of_agent);
}

SharingStructure make_imbalanced_instance(int n_arms, int n_agents) {
    require_coverage_feasible(n_arms, n_agents);
    std::vector<int> arm_of_agent(static_cast<std::size_t>(n_agents));
    for (int a = 0; a < n_arms; ++a) arm_of_agent[static_cast<std::size_t>(a)] = a;
    const int extra = n_agents - n_arms;
    if (extra > 0 && n_arms < 3)
        throw std::invalid_argument(
            "make_imbalanced_instance: extra agents need at least three arms, since arms 0 and 1 "
            "keep a single sharer");
    for (int k = 0; k < extra; ++k)
        arm_of_agent[static_cast<std::size_t>(n_arms + k)] = 2 + k % (n_arms - 2);
    return from_single_arms(arm_of_agent);
}

std::pair<ArmModel, SharingStructure> make_random_instance(int n_arms, int n_agents, Rng& rng) {
    require_coverage_feasible(n_arms, n_agents);
    std::vector<double> means(static_cast<std::size_t>(n_arms));
    for (auto& mu : means) mu = rng.uniform01();

    // One distinct agent per arm first, so every arm has a sharer; everyone
    // else draws an arm uniformly.
    std::vector<int> perm(static_cast<std::size_t>(n_arms));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n_arms - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);

    std::vector<int> arm_of_agent(static_cast<std::size_t>(n_agents));
    for (int a = 0; a < n_arms; ++a) arm_of_agent[static_cast<std::size_t>(a)] = perm[static_cast<std::size_t>(a)];
    for (int a = n_arms; a < n_agents; ++a)
        arm_of_agent[static_cast<std::size_t>(a)] =
            static_cast<int>(rng.below(static_cast<std::uint64_t>(n_arms)));

    return {ArmModel::bernoulli_arms(std::move(means)), from_single_arms(arm_of_agent)};
}

SharingStructure make_multi_share_instance(int n_arms, int n_agents) {
    require_coverage_feasible(n_arms, n_agents);
    SharingStructure s;
    s.profiles.resize(static_cast<std::size_t>(n_agents));
    for (int a = 0; a < n_agents; ++a) {
        auto& p = s.profiles[static_cast<std::size_t>(a)];
        p.agent_id = a;
        const int first = a % n_arms;
        const int second = (a + 1) % n_arms;
        if (first == second) {
            p.shared_arms = {first};
        } else {
            p.shared_arms = {std::min(first, second), std::max(first, second)};
        }
    }
    return s;
}

}  // namespace lsimamab
