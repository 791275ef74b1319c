// SPDX-License-Identifier: Apache-2.0
//
// sixdma - simulation library for base stations with six-dimensional movable antennas
// Copyright (C) 2026 The sixdma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command line front end: scenario generation, the three protocol stages and parameter sweeps.

#include <sixdma/channel.hpp>
#include <sixdma/errors.hpp>
#include <sixdma/io.hpp>
#include <sixdma/placement.hpp>
#include <sixdma/protocol.hpp>
#include <sixdma/sweep.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace sixdma;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace
{
    // Options shared by every subcommand
    struct Common
    {
        std::string config_file;
        std::optional<std::uint64_t> seed;
        std::string out;
        std::size_t threads = 1;
        std::string scenario_file;                 // Replay users from gen-scenario
        std::map<std::string, std::string> values; // Dotted config overrides given on the command line
    };

    // Leaf paths of the default configuration, e.g. "estimation.pilot_length"
    void collect_leaves(const json &j, const std::string &prefix, std::vector<std::pair<std::string, json>> &out)
    {
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            if (it->is_object())
                collect_leaves(*it, key, out);
            else
                out.emplace_back(key, *it);
        }
    }

    // Register --<dotted.key> for every scalar leaf; arrays take a comma-separated list
    void add_config_flags(CLI::App &app, Common &common)
    {
        std::vector<std::pair<std::string, json>> leaves;
        collect_leaves(json::parse(config_to_json(ExperimentConfig{})), "", leaves);
        for (const auto &[key, value] : leaves)
        {
            if (key == "format" || key == "version")
                continue;
            if (value.is_array() && !value.empty() && value.front().is_object())
                continue; // Structured lists such as hotspots are set through --config
            const std::string name = "--" + key;
            auto *opt = app.add_option_function<std::string>(
                name, [&common, key = key](const std::string &v) { common.values[key] = v; },
                "config " + key + " (default " + value.dump() + ")");
            opt->group("Configuration");
        }
    }

    json parse_value(const std::string &text, const json &like)
    {
        if (like.is_string())
            return text;
        if (like.is_array())
        {
            json arr = json::array();
            std::size_t start = 0;
            while (start <= text.size())
            {
                const auto end = text.find(',', start);
                const std::string item = text.substr(start, end == std::string::npos ? end : end - start);
                if (!item.empty())
                    arr.push_back(json::parse(item));
                if (end == std::string::npos)
                    break;
                start = end + 1;
            }
            return arr;
        }
        try
        {
            return json::parse(text);
        }
        catch (const json::parse_error &)
        {
            throw std::invalid_argument("cannot parse value '" + text + "'");
        }
    }

    ExperimentConfig load_config(const Common &common)
    {
        json j = json::parse(config_to_json(ExperimentConfig{}));
        if (!common.config_file.empty())
            j = json::parse(config_to_json(config_from_json(read_text_file(common.config_file))));
        for (const auto &[key, text] : common.values)
        {
            const json::json_pointer ptr("/" + [&] {
                std::string p = key;
                for (auto &c : p)
                    if (c == '.')
                        c = '/';
                return p;
            }());
            j[ptr] = parse_value(text, j[ptr]);
        }
        ExperimentConfig config = config_from_json(j.dump());
        if (!common.out.empty())
            config.output_dir = common.out;
        return config;
    }

    std::uint64_t run_seed(const Common &common, const ExperimentConfig &config)
    {
        if (common.seed)
            return *common.seed;
        return config.seeds.empty() ? 1 : config.seeds.front();
    }

    std::optional<ScenarioFile> load_scenario(const Common &common)
    {
        if (common.scenario_file.empty())
            return std::nullopt;
        return scenario_from_json(read_text_file(common.scenario_file));
    }

    void write(const ExperimentConfig &config, const std::string &name, const std::string &content)
    {
        write_text_file(fs::path(config.output_dir) / name, content);
    }

    void write_stage_one(const ExperimentConfig &config, const ProtocolOutcome &out)
    {
        write(config, "P_bar.csv", matrix_csv(out.P_bar, out.sampled));
        write(config, "Z_bar.csv", matrix_csv(out.Z_bar, out.sampled));
        write(config, "P_hat.csv", matrix_csv(out.reconstruction.power));
        write(config, "Z_hat.csv", matrix_csv(out.reconstruction.sparsity));
    }

    void write_common(const ExperimentConfig &config, const ProtocolOutcome &out)
    {
        write(config, "metrics.csv", metrics_csv({{out.seed, out.metrics}}));
        write(config, "report.txt", report_text(out, config));
        write(config, "config.json", config_to_json(config));
    }

    ProtocolOutcome run_stages(const Common &common, const ExperimentConfig &config, int last_stage)
    {
        const auto scenario = load_scenario(common);
        ExperimentConfig c = config;
        if (scenario)
            c.scenario = scenario->config;
        RunOptions opt;
        opt.threads = common.threads;
        opt.last_stage = last_stage;
        if (scenario)
            opt.users = &scenario->users;
        return run_protocol(c, scenario && !common.seed ? scenario->seed : run_seed(common, config), opt);
    }

    int cmd_gen_scenario(const Common &common)
    {
        const auto config = load_config(common);
        ScenarioFile f;
        f.config = config.scenario;
        f.seed = run_seed(common, config);
        f.users = generate_scenario(f.config, f.seed);
        write(config, "scenario.json", scenario_to_json(f));
        return 0;
    }

    int cmd_estimate_stat(const Common &common)
    {
        const auto config = load_config(common);
        const auto out = run_stages(common, config, 1);
        write_stage_one(config, out);
        write_common(config, out);
        return 0;
    }

    // Optimize on a given power matrix, or on the stage-I reconstruction when none is given
    int cmd_optimize(const Common &common, const std::string &power_file)
    {
        const auto config = load_config(common);
        if (power_file.empty())
        {
            const auto out = run_stages(common, config, 2);
            write_stage_one(config, out);
            write(config, "trace_pso.csv", trace_csv(out.pso.trace));
            write(config, "selection.json", selection_json(out));
            write_common(config, out);
            return 0;
        }

        const auto grid = make_grid(config);
        SelectionProblem problem;
        problem.power = read_matrix_csv(read_text_file(power_file));
        if (problem.power.rows() != static_cast<Eigen::Index>(grid.size()))
            throw ShapeMismatch("optimize: power matrix has " + std::to_string(problem.power.rows()) +
                                " rows, the grid has " + std::to_string(grid.size()) + " poses");
        problem.distances = grid.distances;
        problem.surfaces = config.grid.surfaces;
        problem.min_distance = config.grid.min_distance;
        problem.transmit_power = config.scenario.transmit_power;
        problem.noise_power = resolve_noise_power(
            config.scenario, problem.power,
            threshold_power(problem.power, relative_threshold(problem.power, config.estimation.threshold_ratio)),
            grid.antennas());
        PsoConfig pso = config.pso;
        pso.seed = derive_seed(run_seed(common, config), Stream::pso);
        const auto result = pso_optimize(problem, pso);
        json j = {{"format", "sixdma-selection"},
                  {"version", json_format_version},
                  {"seed", run_seed(common, config)},
                  {"selected_poses", selected_indices(result.selection)},
                  {"sum_rate", result.sum_rate},
                  {"penalty_weight", result.penalty_weight},
                  {"repaired", result.repaired}};
        write(config, "selection.json", j.dump(2) + "\n");
        write(config, "trace_pso.csv", trace_csv(result.trace));
        return 0;
    }

    int cmd_full(const Common &common, bool channels_only)
    {
        const auto config = load_config(common);
        const auto out = run_stages(common, config, 3);
        const auto poses = selected_indices(out.pso.selection);
        const auto N = config.grid.antennas;
        write(config, "H_true.csv", channel_csv(out.H_inst, poses, N));
        if (out.H_restricted.size() > 0)
            write(config, "H_restricted.csv", channel_csv(out.H_restricted, poses, N));
        if (out.H_plain.size() > 0)
            write(config, "H_plain.csv", channel_csv(out.H_plain, poses, N));
        if (!channels_only)
        {
            write_stage_one(config, out);
            write(config, "trace_pso.csv", trace_csv(out.pso.trace));
            write(config, "selection.json", selection_json(out));
        }
        write_common(config, out);
        return 0;
    }

    int cmd_sweep(const Common &common, const std::string &axis_name, const std::vector<double> &values)
    {
        const auto config = load_config(common);
        const auto axis = parse_sweep_axis(axis_name);
        const std::vector<std::uint64_t> s = common.seed ? std::vector<std::uint64_t>{*common.seed} : config.seeds;
        const auto result = sweep(config, axis, values, s, common.threads);
        write(config, "sweep.csv", sweep_csv(result));
        write(config, "sweep_summary.csv", sweep_summary_csv(axis, summarize(result)));
        write(config, "config.json", config_to_json(config));
        return 0;
    }

    void print_error(const std::exception &e)
    {
        const json record = {{"error", error_kind(e)}, {"message", e.what()}};
        std::cerr << record.dump() << std::endl;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"sixdma: simulation of base stations with six-dimensional movable antennas"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sixdma 0.1.0");

    Common common;
    std::string power_file, axis;
    std::vector<double> values;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", common.config_file, "JSON experiment configuration")->check(CLI::ExistingFile);
        sub->add_option("--seed", common.seed, "Experiment seed (default: first entry of --seeds)");
        sub->add_option("--out", common.out, "Output directory (default: output_dir of the configuration)");
        sub->add_option("--threads", common.threads, "Worker threads, 0 uses all cores")->default_val(1);
        add_config_flags(*sub, common);
    };

    auto *gen = app.add_subcommand("gen-scenario", "Draw users and write scenario.json");
    add_common(gen);

    auto *stat = app.add_subcommand("estimate-stat", "Stage I: statistical CSI on the sampled poses and reconstruction");
    add_common(stat);
    stat->add_option("--scenario", common.scenario_file, "Replay users from a scenario.json")->check(CLI::ExistingFile);

    auto *opt = app.add_subcommand("optimize", "Stage II: pose selection by penalty PSO");
    add_common(opt);
    opt->add_option("--scenario", common.scenario_file, "Replay users from a scenario.json")->check(CLI::ExistingFile);
    opt->add_option("--power", power_file, "Optimize on this M x K power matrix (P_hat.csv layout)")
        ->check(CLI::ExistingFile);

    auto *inst = app.add_subcommand("estimate-inst", "Stage III: instantaneous channels at the selected poses");
    add_common(inst);
    inst->add_option("--scenario", common.scenario_file, "Replay users from a scenario.json")->check(CLI::ExistingFile);

    auto *full = app.add_subcommand("run-protocol", "All three stages with every output file");
    add_common(full);
    full->add_option("--scenario", common.scenario_file, "Replay users from a scenario.json")->check(CLI::ExistingFile);

    auto *sw = app.add_subcommand("sweep", "Seed-averaged metrics over one parameter axis");
    add_common(sw);
    sw->add_option("--axis", axis, "pilot_length, transmit_power or user_count")->required();
    sw->add_option("--values", values, "Axis values")->required()->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }

    try
    {
        if (*gen)
            return cmd_gen_scenario(common);
        if (*stat)
            return cmd_estimate_stat(common);
        if (*opt)
            return cmd_optimize(common, power_file);
        if (*inst)
            return cmd_full(common, true);
        if (*full)
            return cmd_full(common, false);
        if (*sw)
            return cmd_sweep(common, axis, values);
    }
    catch (const std::exception &e)
    {
        print_error(e);
        return 2;
    }
    return 0;
}
