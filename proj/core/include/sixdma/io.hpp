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

#ifndef SIXDMA_IO_HPP
#define SIXDMA_IO_HPP

#include "sixdma/protocol.hpp"
#include "sixdma/sweep.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sixdma
{
    inline constexpr int csv_schema_version = 1;
    inline constexpr int json_format_version = 1;

    // Shortest round-trip decimal representation; "nan" and "inf" for non-finite values
    std::string format_number(double value);

    // Column names of metrics.csv after the version and seed columns, in order
    std::vector<std::string> metrics_columns();
    std::vector<double> metric_values(const MetricsReport &report);

    std::string metrics_csv(const std::vector<std::pair<std::uint64_t, MetricsReport>> &rows);

    // Header "pose,user_0,...,user_{K-1}"; rows labelled with the given pose indices (0..rows-1 if empty)
    std::string matrix_csv(const RMatrix &values, const std::vector<std::size_t> &poses = {});
    std::string matrix_csv(const IndicatorMatrix &values, const std::vector<std::size_t> &poses = {});

    // Parse a file written by matrix_csv; pose labels are returned through `poses` when given
    RMatrix read_matrix_csv(const std::string &text, std::vector<std::size_t> *poses = nullptr);

    // iteration,gbest_fitness; iteration 0 is the initial swarm
    std::string trace_csv(const std::vector<double> &trace);

    // pose,user,antenna,real,imag for a stacked (B N) x K channel over the listed poses
    std::string channel_csv(const CMatrix &H, const std::vector<std::size_t> &poses, std::size_t N);

    std::string sweep_csv(const SweepResult &result);
    std::string sweep_summary_csv(SweepAxis axis, const std::vector<SummaryRow> &rows);

    // Human-readable run report including timings, per-pose objective values and the selection
    std::string report_text(const ProtocolOutcome &outcome, const ExperimentConfig &config);

    // JSON experiment configuration; missing keys keep their defaults, unknown keys are rejected
    std::string config_to_json(const ExperimentConfig &config);
    ExperimentConfig config_from_json(const std::string &text);

    // Versioned scenario file for replay
    struct ScenarioFile
    {
        ScenarioConfig config;
        std::uint64_t seed = 0;
        std::vector<UserSpec> users;
    };

    std::string scenario_to_json(const ScenarioFile &scenario);
    ScenarioFile scenario_from_json(const std::string &text);

    // Selected pose indices and rates as JSON
    std::string selection_json(const ProtocolOutcome &outcome);

    std::string read_text_file(const std::filesystem::path &path);
    void write_text_file(const std::filesystem::path &path, const std::string &content);
}

#endif
