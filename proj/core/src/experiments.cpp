#include "lsimamab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "internal/format.hpp"
#include "internal/parallel.hpp"

namespace lsimamab {

namespace {

// Salt for per-replication instance draws in the random setting, keeping the
// instance stream independent of the run's reward stream.
constexpr std::uint64_t kInstanceSalt = 0x1457;

std::vector<double> linspace_down(double top, double bottom, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            top + (bottom - top) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

int grid_index_of(const ExperimentPreset& preset, long long n_agents, long long horizon) {
    int index = 0;
    for (long long m : preset.agent_grid)
        for (long long t : preset.horizon_grid) {
            if (m == n_agents && t == horizon) return index;
            ++index;
        }
    throw std::invalid_argument("grid point (" + std::to_string(n_agents) + ", " +
                                std::to_string(horizon) + ") is not on the preset grid");
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) /
                     static_cast<double>(v.size()));
}

}  // namespace

Setting setting_from_name(std::string_view name) {
    if (name == "balanced") return Setting::balanced;
    if (name == "imbalanced") return Setting::imbalanced;
    if (name == "random") return Setting::random_draw;
    throw std::invalid_argument("unknown setting '" + std::string(name) +
                                "'; expected balanced, imbalanced or random");
}

void ExperimentPreset::validate() const {
    if (agent_grid.empty() || horizon_grid.empty())
        throw std::invalid_argument("ExperimentPreset: empty parameter grid");
    if (replications < 1) throw std::invalid_argument("ExperimentPreset: replications must be >= 1");
    if (n_arms < 1) throw std::invalid_argument("ExperimentPreset: needs at least one arm");
    if (!(threshold >= 1.0))
        throw std::invalid_argument("ExperimentPreset: balance threshold must be at least 1");
    if (setting != Setting::random_draw && setting != Setting::oracle &&
        static_cast<int>(means.size()) != n_arms)
        throw std::invalid_argument("ExperimentPreset: means must cover every arm");
}

std::vector<std::string> preset_names() {
    return {"balanced_fig2a",     "imbalanced_fig2b", "profit_fig3",
            "regret_vs_T_appxI1", "random_appxI2",    "oracle_deterministic"};
}

ExperimentPreset preset_by_name(std::string_view name) {
    ExperimentPreset p;
    p.name = std::string(name);
    if (name == "balanced_fig2a" || name == "imbalanced_fig2b" || name == "random_appxI2") {
        p.setting = name == "balanced_fig2a"
                        ? Setting::balanced
                        : (name == "imbalanced_fig2b" ? Setting::imbalanced : Setting::random_draw);
        p.n_arms = 10;
        if (p.setting != Setting::random_draw) p.means = linspace_down(0.9, 0.0, 10);
        p.agent_grid = {10, 50, 100, 500, 1000};
        p.horizon_grid = {100000};
        return p;
    }
    if (name == "profit_fig3") {
        p.setting = Setting::balanced;
        p.n_arms = 10;
        p.means = linspace_down(0.9, 0.0, 10);
        p.agent_grid = {100, 1000, 5000};
        p.horizon_grid = {100000};
        return p;
    }
    if (name == "regret_vs_T_appxI1") {
        p.setting = Setting::multi_share;
        p.n_arms = 10;
        p.means = linspace_down(0.95, 0.05, 10);
        p.agent_grid = {20};
        p.horizon_grid = {1000, 3162, 10000, 31623, 100000};
        return p;
    }
    if (name == "oracle_deterministic") {
        p.setting = Setting::oracle;
        p.n_arms = 2;
        p.means = {1.0, 0.5};
        p.dist = DistKind::deterministic;
        p.agent_grid = {2};
        p.horizon_grid = {1000};
        p.replications = 1;
        return p;
    }
    std::string known;
    for (const auto& k : preset_names()) {
        if (!known.empty()) known += ", ";
        known += k;
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'; available: " + known);
}

std::pair<ArmModel, SharingStructure> make_instance(const ExperimentPreset& preset,
                                                    long long n_agents, std::uint64_t rep_seed) {
    const int m = static_cast<int>(n_agents);
    switch (preset.setting) {
        case Setting::balanced:
            return {ArmModel{preset.means, preset.dist, {}, {}},
                    make_balanced_instance(preset.n_arms, m)};
        case Setting::imbalanced:
            return {ArmModel{preset.means, preset.dist, {}, {}},
                    make_imbalanced_instance(preset.n_arms, m)};
        case Setting::multi_share:
            return {ArmModel{preset.means, preset.dist, {}, {}},
                    make_multi_share_instance(preset.n_arms, m)};
        case Setting::random_draw: {
            Rng rng(derive_seed(rep_seed, kInstanceSalt));
            return make_random_instance(preset.n_arms, m, rng);
        }
        case Setting::oracle: {
            if (m != 2)
                throw std::invalid_argument("oracle preset is defined for exactly two agents");
            SharingStructure s;
            s.profiles = {{0, {0}}, {1, {1}}};
            return {ArmModel::deterministic_arms({1.0, 0.5}), s};
        }
    }
    throw std::logic_error("make_instance: unreachable");
}

RunConfig make_run_config(const ExperimentPreset& preset, long long n_agents, long long horizon,
                          std::uint64_t rep_seed) {
    RunConfig cfg;
    auto [model, sharing] = make_instance(preset, n_agents, rep_seed);
    cfg.model = std::move(model);
    cfg.sharing = std::move(sharing);
    cfg.horizon = horizon;
    cfg.threshold = preset.threshold;
    cfg.seed = rep_seed;
    cfg.diagnostics_enabled = true;
    cfg.exclude_own_shares = preset.exclude_own_shares;
    return cfg;
}

std::vector<RunResult> run_grid_point(const ExperimentPreset& preset, long long n_agents,
                                      long long horizon) {
    preset.validate();
    const int grid_index = grid_index_of(preset, n_agents, horizon);
    const std::uint64_t seed0 =
        preset.base_seed + static_cast<std::uint64_t>(grid_index) *
                               static_cast<std::uint64_t>(preset.replications);
    std::vector<RunResult> results(static_cast<std::size_t>(preset.replications));
    internal::parallel_for_index(preset.replications, [&](int rep) {
        const std::uint64_t rep_seed = seed0 + static_cast<std::uint64_t>(rep);
        results[static_cast<std::size_t>(rep)] =
            simulate(make_run_config(preset, n_agents, horizon, rep_seed));
    });
    return results;
}

GridPointSummary summarize(const ExperimentPreset& preset, long long n_agents, long long horizon,
                           std::span<const RunResult> results) {
    const int reps = static_cast<int>(results.size());
    GridPointSummary s;
    s.preset = preset.name;
    s.n_agents = n_agents;
    s.n_arms = preset.n_arms;
    s.horizon = horizon;
    s.threshold = preset.threshold;
    s.seed_base = preset.base_seed + static_cast<std::uint64_t>(grid_index_of(preset, n_agents, horizon)) *
                                         static_cast<std::uint64_t>(preset.replications);
    s.replications = reps;

    std::vector<double> overall(results.size());
    double good = 0.0, min_count = 0.0, caps = 0.0, bound_sum = 0.0;
    for (std::size_t r = 0; r < results.size(); ++r) {
        const RunResult& run = results[r];
        overall[r] = run.overall_regret;
        s.avg_individual_regret_mean +=
            run.overall_regret / static_cast<double>(run.per_agent_regret.size());
        double max_raw = 0.0, max_adjusted = 0.0, total_com = 0.0, total_cost = 0.0;
        for (std::size_t m = 0; m < run.per_agent_regret.size(); ++m) {
            max_raw = std::max(max_raw, run.per_agent_regret[m]);
            const double adjusted = run.per_agent_regret[m] - run.incentive.compensation[m] +
                                    run.incentive.cost[m];
            max_adjusted = m == 0 ? adjusted : std::max(max_adjusted, adjusted);
            total_com += run.incentive.compensation[m];
            total_cost += run.incentive.cost[m];
        }
        s.max_raw_individual_regret_mean += max_raw;
        s.max_ir_adjusted_regret_mean += max_adjusted;
        s.ucb_regret_mean += run.ucb_regret;
        s.total_compensation_mean += total_com;
        s.total_cost_mean += total_cost;
        s.controller_profit_mean += run.incentive.controller_profit;
        s.shared_pairs_mean += static_cast<double>(run.shared_pairs_total);
        good += run.diagnostics.good_event_held ? 1.0 : 0.0;
        min_count += run.diagnostics.min_count_invariant_held ? 1.0 : 0.0;
        caps += run.diagnostics.exploration_caps_held ? 1.0 : 0.0;
        bound_sum += run.diagnostics.theorem1_bound_value;
    }
    const double inv = 1.0 / static_cast<double>(reps);
    s.overall_regret_mean = mean_of(overall);
    s.overall_regret_se = standard_error(overall, s.overall_regret_mean);
    s.avg_individual_regret_mean *= inv;
    s.max_raw_individual_regret_mean *= inv;
    s.max_ir_adjusted_regret_mean *= inv;
    s.ucb_regret_mean *= inv;
    s.total_compensation_mean *= inv;
    s.total_cost_mean *= inv;
    s.controller_profit_mean *= inv;
    s.shared_pairs_mean *= inv;
    s.good_event_rate = good * inv;
    s.min_count_invariant_rate = min_count * inv;
    s.exploration_caps_rate = caps * inv;
    // Fixed-instance presets share one bound; the random setting reports the
    // per-replication average.
    s.theorem1_bound_value = bound_sum * inv;
    return s;
}

std::vector<GridPointSummary> run_preset_collect(const ExperimentPreset& preset) {
    preset.validate();
    std::vector<GridPointSummary> rows;
    for (long long m : preset.agent_grid)
        for (long long t : preset.horizon_grid) {
            const std::vector<RunResult> results = run_grid_point(preset, m, t);
            rows.push_back(summarize(preset, m, t, results));
        }
    return rows;
}

std::vector<std::string> summary_csv_columns() {
    return {"preset",
            "M",
            "N",
            "T",
            "B",
            "seed_base",
            "reps",
            "overall_regret_mean",
            "overall_regret_se",
            "avg_individual_regret_mean",
            "max_raw_individual_regret_mean",
            "max_ir_adjusted_regret_mean",
            "ucb_regret_mean",
            "total_compensation_mean",
            "total_cost_mean",
            "controller_profit_mean",
            "shared_pairs_mean",
            "good_event_rate",
            "min_count_invariant_rate",
            "exploration_caps_rate",
            "theorem1_bound_value"};
}

void write_summary_csv(std::span<const GridPointSummary> rows, std::ostream& out) {
    const auto columns = summary_csv_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) out << ',';
        out << columns[i];
    }
    out << '\n';
    using internal::format_int;
    using internal::format_sig9;
    using internal::format_uint;
    for (const auto& s : rows) {
        out << s.preset << ',' << format_int(s.n_agents) << ',' << format_int(s.n_arms) << ','
            << format_int(s.horizon) << ',' << format_sig9(s.threshold) << ','
            << format_uint(s.seed_base) << ',' << format_int(s.replications) << ','
            << format_sig9(s.overall_regret_mean) << ',' << format_sig9(s.overall_regret_se) << ','
            << format_sig9(s.avg_individual_regret_mean) << ','
            << format_sig9(s.max_raw_individual_regret_mean) << ','
            << format_sig9(s.max_ir_adjusted_regret_mean) << ',' << format_sig9(s.ucb_regret_mean)
            << ',' << format_sig9(s.total_compensation_mean) << ','
            << format_sig9(s.total_cost_mean) << ',' << format_sig9(s.controller_profit_mean)
            << ',' << format_sig9(s.shared_pairs_mean) << ',' << format_sig9(s.good_event_rate)
            << ',' << format_sig9(s.min_count_invariant_rate) << ','
            << format_sig9(s.exploration_caps_rate) << ','
            << format_sig9(s.theorem1_bound_value) << '\n';
    }
}

std::filesystem::path run_preset(const ExperimentPreset& preset,
                                 const std::filesystem::path& output_dir,
                                 const RunPresetOptions& options) {
    preset.validate();
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    const std::filesystem::path csv_path = output_dir / (preset.name + ".csv");

    std::vector<GridPointSummary> rows;
    for (long long m : preset.agent_grid)
        for (long long t : preset.horizon_grid) {
            std::vector<RunResult> results;
            if (options.trace) {
                // Traced replications run sequentially; each one streams its
                // own file next to the CSV.
                const int grid_index = grid_index_of(preset, m, t);
                const std::uint64_t seed0 =
                    preset.base_seed + static_cast<std::uint64_t>(grid_index) *
                                           static_cast<std::uint64_t>(preset.replications);
                for (int rep = 0; rep < preset.replications; ++rep) {
                    const std::uint64_t rep_seed = seed0 + static_cast<std::uint64_t>(rep);
                    const std::filesystem::path trace_path =
                        output_dir / (preset.name + "_M" + std::to_string(m) + "_T" +
                                      std::to_string(t) + "_rep" + std::to_string(rep) +
                                      ".trace.jsonl");
                    std::ofstream trace_out(trace_path);
                    if (!trace_out)
                        throw std::runtime_error("cannot write trace file " + trace_path.string());
                    JsonlTraceSink sink(trace_out);
                    results.push_back(simulate(make_run_config(preset, m, t, rep_seed), &sink));
                }
            } else {
                results = run_grid_point(preset, m, t);
            }
            rows.push_back(summarize(preset, m, t, results));
        }

    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary CSV " + csv_path.string());
    write_summary_csv(rows, out);
    out.close();
    if (!out) throw std::runtime_error("failed writing summary CSV " + csv_path.string());
    return csv_path;
}

}  // namespace lsimamab
