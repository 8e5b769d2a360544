#pragma once

#include <utility>
#include <vector>

#include "lsimamab/arm_model.hpp"
#include "lsimamab/rng.hpp"

namespace lsimamab {

// One agent and the arms whose pull outcomes she is willing to broadcast.
// Arm and agent indices are 0-based throughout.
struct AgentProfile {
    int agent_id = 0;
    std::vector<int> shared_arms;  // sorted, unique; may be empty
};

struct SharingStructure {
    std::vector<AgentProfile> profiles;

    int n_agents() const { return static_cast<int>(profiles.size()); }

    // |S_i| per arm: how many agents are willing to share arm i.
    std::vector<int> share_set_sizes(int n_arms) const;
    bool fully_covered(int n_arms) const;

    void validate(int n_arms) const;  // throws std::invalid_argument
};

// Generators for the standard experiment layouts. Each one refuses instances
// that would leave an arm uncovered; the simulator itself tolerates uncovered
// arms, the generators just never produce them.

// Agent a shares arm (a mod n_arms); remainder agents land on the lowest arm
// indices first.
SharingStructure make_balanced_instance(int n_arms, int n_agents);

// Arms 0 and 1 get exactly one sharer each; everyone else is spread evenly
// across arms 2..N-1.
SharingStructure make_imbalanced_instance(int n_arms, int n_agents);

// Uniform means plus random single-arm sharing. A random permutation first
// pins one distinct agent per arm so coverage always holds; remaining agents
// draw an arm uniformly.
std::pair<ArmModel, SharingStructure> make_random_instance(int n_arms, int n_agents, Rng& rng);

// Ring layout where agent a shares the pair {a mod N, (a+1) mod N}.
SharingStructure make_multi_share_instance(int n_arms, int n_agents);

}  // namespace lsimamab
