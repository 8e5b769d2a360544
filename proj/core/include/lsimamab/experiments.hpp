#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsimamab/sim.hpp"

namespace lsimamab {

enum class Setting { balanced, imbalanced, random_draw, multi_share, oracle };

// Maps the CLI names {balanced, imbalanced, random}.
Setting setting_from_name(std::string_view name);

struct ExperimentPreset {
    std::string name;
    Setting setting = Setting::balanced;
    int n_arms = 10;
    std::vector<double> means;  // ignored for random_draw
    DistKind dist = DistKind::bernoulli;
    std::vector<long long> agent_grid;    // M values
    std::vector<long long> horizon_grid;  // T values
    double threshold = 1.0;
    int replications = 100;
    std::uint64_t base_seed = 42;
    bool exclude_own_shares = false;

    void validate() const;
};

// Built-in presets: balanced_fig2a, imbalanced_fig2b, profit_fig3,
// regret_vs_T_appxI1, random_appxI2, oracle_deterministic. Throws with the
// full list on an unknown name.
ExperimentPreset preset_by_name(std::string_view name);
std::vector<std::string> preset_names();

// Instance for one grid point. random_draw derives means and sharing from the
// replication seed, so every replication sees a fresh instance.
std::pair<ArmModel, SharingStructure> make_instance(const ExperimentPreset& preset,
                                                    long long n_agents, std::uint64_t rep_seed);

RunConfig make_run_config(const ExperimentPreset& preset, long long n_agents, long long horizon,
                          std::uint64_t rep_seed);

// All replications of one grid point, in seed order. Each grid point draws
// its seeds from a disjoint block of base_seed + grid_index * replications.
std::vector<RunResult> run_grid_point(const ExperimentPreset& preset, long long n_agents,
                                      long long horizon);

struct GridPointSummary {
    std::string preset;
    long long n_agents = 0;
    int n_arms = 0;
    long long horizon = 0;
    double threshold = 1.0;
    std::uint64_t seed_base = 0;
    int replications = 0;
    double overall_regret_mean = 0.0;
    double overall_regret_se = 0.0;
    double avg_individual_regret_mean = 0.0;
    double max_raw_individual_regret_mean = 0.0;
    double max_ir_adjusted_regret_mean = 0.0;
    double ucb_regret_mean = 0.0;
    double total_compensation_mean = 0.0;
    double total_cost_mean = 0.0;
    double controller_profit_mean = 0.0;
    double shared_pairs_mean = 0.0;
    double good_event_rate = 0.0;
    double min_count_invariant_rate = 0.0;
    double exploration_caps_rate = 0.0;
    double theorem1_bound_value = 0.0;
};

GridPointSummary summarize(const ExperimentPreset& preset, long long n_agents, long long horizon,
                           std::span<const RunResult> results);

std::vector<GridPointSummary> run_preset_collect(const ExperimentPreset& preset);

// Stable column set of the summary CSV, in emission order.
std::vector<std::string> summary_csv_columns();
void write_summary_csv(std::span<const GridPointSummary> rows, std::ostream& out);

struct RunPresetOptions {
    // Dump one trace file per replication next to the CSV.
    bool trace = false;
};

/// Runs every grid point of the preset and writes <output_dir>/<name>.csv,
/// one row per grid point in grid order. Numeric cells carry 9 significant
/// digits with locale-independent formatting, so equal inputs give
/// byte-identical files. Returns the CSV path.
std::filesystem::path run_preset(const ExperimentPreset& preset,
                                 const std::filesystem::path& output_dir,
                                 const RunPresetOptions& options = {});

}  // namespace lsimamab
