// Command-line harness: `run` executes a preset or an ad-hoc experiment grid
// and writes a summary CSV; `plot` renders CSV columns as an SVG figure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lsimamab/experiments.hpp"
#include "lsimamab/plot.hpp"

namespace {

std::vector<double> default_means(int n_arms) {
    // evenly spaced from 0.9 down toward 0, the standard ladder
    std::vector<double> means(static_cast<std::size_t>(n_arms));
    for (int i = 0; i < n_arms; ++i)
        means[static_cast<std::size_t>(i)] =
            n_arms == 1 ? 0.9
                        : 0.9 * (1.0 - static_cast<double>(i) / static_cast<double>(n_arms - 1));
    return means;
}

// Flat key=value configuration: one pair per line, '#' comments, list values
// separated by spaces or commas. Keys mirror the run flags with '-' or '_'
// (preset, setting, agents, arms, horizon, balance_threshold, replications,
// seed, output_dir, trace, exclude_own_shares, means). Command-line flags
// always win over file values.
std::map<std::string, std::string> read_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        for (auto& c : key)
            if (c == '-') c = '_';
        if (!key.empty()) kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::string item;
    std::stringstream ss(text);
    while (ss >> item) {
        std::stringstream conv(item);
        T v;
        std::string tail;
        if (!(conv >> v) || (conv >> tail && !tail.empty()))
            throw std::runtime_error("bad list value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

bool parse_bool(const std::string& text) {
    return text == "1" || text == "true" || text == "yes" || text == "on";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for multi-agent bandit collaboration with partial information "
                 "sharing and end-of-game settlement"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run = app.add_subcommand("run", "Run a preset or an ad-hoc experiment grid");
    std::string config_path;
    std::string preset_name;
    std::string setting_name;
    std::vector<long long> agents;
    int arms = 10;
    std::vector<long long> horizons;
    double threshold = -1.0;
    int replications = -1;
    std::uint64_t seed = 0;
    std::string output_dir;
    bool trace = false;
    bool exclude_own = false;
    std::vector<double> means;

    run->add_option("--config", config_path,
                    "Flat key=value file; command-line flags override it");
    auto* opt_preset = run->add_option("--preset", preset_name,
                                       "Built-in preset: " + [] {
                                           std::string s;
                                           for (const auto& n : lsimamab::preset_names()) {
                                               if (!s.empty()) s += ", ";
                                               s += n;
                                           }
                                           return s;
                                       }());
    auto* opt_setting = run->add_option("--setting", setting_name,
                                        "Ad-hoc sharing layout: balanced, imbalanced or random");
    auto* opt_agents =
        run->add_option("--agents", agents, "Agent counts M (one grid point per value)");
    auto* opt_arms = run->add_option("--arms", arms, "Number of arms N");
    auto* opt_horizon =
        run->add_option("--horizon", horizons, "Horizons T (one grid point per value)");
    auto* opt_threshold =
        run->add_option("--balance-threshold", threshold, "Balance threshold B, at least 1");
    auto* opt_reps =
        run->add_option("--replications", replications, "Independent runs per grid point");
    auto* opt_seed = run->add_option("--seed", seed, "Base seed");
    auto* opt_outdir =
        run->add_option("--output-dir", output_dir, "Directory for CSV (and trace) output");
    auto* opt_trace =
        run->add_flag("--trace", trace, "Dump one per-pull trace file per replication");
    auto* opt_exclude =
        run->add_flag("--exclude-own-shares", exclude_own,
                      "Charge only for pairs received, not the agent's own broadcasts");
    auto* opt_means = run->add_option("--means", means, "Ad-hoc true means, one per arm");

    // ---- plot ----
    auto* plot = app.add_subcommand("plot", "Render summary CSV columns as an SVG line plot");
    std::string csv_path, x_column, svg_path, title;
    std::vector<std::string> y_columns;
    plot->add_option("--csv", csv_path, "Summary CSV path")->required();
    plot->add_option("--x", x_column, "Column for the x axis")->required();
    plot->add_option("--y", y_columns, "Column(s) to draw")->required();
    plot->add_option("--output", svg_path, "Output SVG path")->required();
    plot->add_option("--title", title, "Plot title");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            bool seed_given = opt_seed->count() > 0;
            if (!config_path.empty()) {
                const auto kv = read_flat_config(config_path);
                auto has = [&](const char* key) { return kv.count(key) > 0; };
                if (opt_preset->count() == 0 && has("preset")) preset_name = kv.at("preset");
                if (opt_setting->count() == 0 && has("setting")) setting_name = kv.at("setting");
                if (opt_agents->count() == 0 && has("agents"))
                    agents = parse_list<long long>(kv.at("agents"));
                if (opt_arms->count() == 0 && has("arms")) arms = std::stoi(kv.at("arms"));
                if (opt_horizon->count() == 0 && has("horizon"))
                    horizons = parse_list<long long>(kv.at("horizon"));
                if (opt_threshold->count() == 0 && has("balance_threshold"))
                    threshold = std::stod(kv.at("balance_threshold"));
                if (opt_reps->count() == 0 && has("replications"))
                    replications = std::stoi(kv.at("replications"));
                if (!seed_given && has("seed")) {
                    seed = std::stoull(kv.at("seed"));
                    seed_given = true;
                }
                if (opt_outdir->count() == 0 && has("output_dir"))
                    output_dir = kv.at("output_dir");
                if (opt_trace->count() == 0 && has("trace")) trace = parse_bool(kv.at("trace"));
                if (opt_exclude->count() == 0 && has("exclude_own_shares"))
                    exclude_own = parse_bool(kv.at("exclude_own_shares"));
                if (opt_means->count() == 0 && has("means"))
                    means = parse_list<double>(kv.at("means"));
            }
            if (output_dir.empty()) output_dir = ".";

            lsimamab::ExperimentPreset preset;
            if (!preset_name.empty()) {
                preset = lsimamab::preset_by_name(preset_name);
                if (!agents.empty()) preset.agent_grid = agents;
                if (!horizons.empty()) preset.horizon_grid = horizons;
                if (!means.empty()) preset.means = means;
            } else {
                if (setting_name.empty())
                    throw std::invalid_argument("either --preset or --setting is required");
                preset.name = "custom_" + setting_name;
                preset.setting = lsimamab::setting_from_name(setting_name);
                preset.n_arms = arms;
                if (preset.setting != lsimamab::Setting::random_draw)
                    preset.means = means.empty() ? default_means(arms) : means;
                if (agents.empty())
                    throw std::invalid_argument("--agents is required without a preset");
                preset.agent_grid = agents;
                preset.horizon_grid =
                    horizons.empty() ? std::vector<long long>{100000} : horizons;
                preset.replications = 100;
            }
            if (threshold >= 0.0) preset.threshold = threshold;
            if (replications > 0) preset.replications = replications;
            if (seed_given) preset.base_seed = seed;
            if (exclude_own) preset.exclude_own_shares = true;

            lsimamab::RunPresetOptions options;
            options.trace = trace;
            const auto csv = lsimamab::run_preset(preset, output_dir, options);
            std::printf("%s\n", csv.string().c_str());
        } else if (plot->parsed()) {
            lsimamab::PlotOptions options;
            options.title = title;
            lsimamab::render_plot(csv_path, x_column, y_columns, svg_path, options);
            std::printf("%s\n", svg_path.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
