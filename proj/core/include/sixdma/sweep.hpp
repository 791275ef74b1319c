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

#ifndef SIXDMA_SWEEP_HPP
#define SIXDMA_SWEEP_HPP

#include "sixdma/protocol.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sixdma
{
    enum class SweepAxis
    {
        pilot_length,   // Stage-I and stage-III pilot length
        transmit_power, // p, noise power held at its value for the configured transmit power
        user_count      // K
    };

    SweepAxis parse_sweep_axis(const std::string &name);
    std::string to_string(SweepAxis axis);

    // Configuration of one sweep cell
    ExperimentConfig apply_axis(const ExperimentConfig &config, SweepAxis axis, double value, std::uint64_t seed);

    struct SweepRow
    {
        double value = 0.0;
        std::uint64_t seed = 0;
        MetricsReport metrics;
    };

    // Rows are sorted by axis value, then seed
    struct SweepResult
    {
        SweepAxis axis = SweepAxis::pilot_length;
        std::vector<SweepRow> rows;
    };

    SweepResult sweep(const ExperimentConfig &config, SweepAxis axis, const std::vector<double> &values,
                      const std::vector<std::uint64_t> &seeds, std::size_t threads = 1);

    // Seed statistics of one metric column at one axis value
    struct SummaryRow
    {
        double value = 0.0;
        std::string quantity;  // detection_error_rate, nmse_p, nmse_c or sum_rate
        std::string algorithm; // Curve label
        std::string column;    // Metrics column the statistics are taken from
        double mean = 0.0;
        double std = 0.0;       // Sample standard deviation
        double std_error = 0.0; // std / sqrt(count)
        std::size_t count = 0;  // Seeds with a finite value
    };

    std::vector<SummaryRow> summarize(const SweepResult &result);
}

#endif
