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

#include "sixdma/sweep.hpp"
#include "sixdma/io.hpp"
#include "sixdma/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sixdma
{
    SweepAxis parse_sweep_axis(const std::string &name)
    {
        if (name == "pilot_length")
            return SweepAxis::pilot_length;
        if (name == "transmit_power")
            return SweepAxis::transmit_power;
        if (name == "user_count")
            return SweepAxis::user_count;
        throw std::invalid_argument("unknown sweep axis '" + name +
                                    "', expected pilot_length, transmit_power or user_count");
    }

    std::string to_string(SweepAxis axis)
    {
        switch (axis)
        {
        case SweepAxis::pilot_length:
            return "pilot_length";
        case SweepAxis::transmit_power:
            return "transmit_power";
        case SweepAxis::user_count:
            return "user_count";
        }
        return "unknown";
    }

    namespace
    {
        std::size_t as_count(double value, const char *what)
        {
            if (!(value >= 1.0) || value != std::floor(value))
                throw std::invalid_argument(std::string("sweep: ") + what + " must be a positive integer");
            return static_cast<std::size_t>(value);
        }
    }

    ExperimentConfig apply_axis(const ExperimentConfig &config, SweepAxis axis, double value, std::uint64_t seed)
    {
        ExperimentConfig c = config;
        switch (axis)
        {
        case SweepAxis::pilot_length:
            c.estimation.pilot_length = as_count(value, "pilot_length");
            c.estimation.inst_pilot_length = c.estimation.pilot_length;
            break;
        case SweepAxis::transmit_power:
            if (!(value > 0.0))
                throw std::invalid_argument("sweep: transmit_power must be positive");
            if (c.scenario.noise_power == 0.0)
            {
                // Noise follows from the SNR at the configured power, then stays fixed
                const auto users = generate_scenario(c.scenario, seed);
                const auto grid = make_grid(c);
                const RMatrix P = true_power_matrix(users, grid, c.scenario.radio);
                const IndicatorMatrix Z =
                    threshold_power(P, relative_threshold(P, c.estimation.threshold_ratio));
                c.scenario.noise_power = resolve_noise_power(c.scenario, P, Z, grid.antennas());
            }
            c.scenario.transmit_power = value;
            break;
        case SweepAxis::user_count:
            c.scenario.users = as_count(value, "user_count");
            break;
        }
        return c;
    }

    SweepResult sweep(const ExperimentConfig &config, SweepAxis axis, const std::vector<double> &values,
                      const std::vector<std::uint64_t> &seeds, std::size_t threads)
    {
        if (values.empty() || seeds.empty())
            throw std::invalid_argument("sweep: values and seeds must be nonempty");

        std::vector<double> sorted_values = values;
        std::sort(sorted_values.begin(), sorted_values.end());
        std::vector<std::uint64_t> sorted_seeds = seeds;
        std::sort(sorted_seeds.begin(), sorted_seeds.end());

        SweepResult result;
        result.axis = axis;
        result.rows.resize(sorted_values.size() * sorted_seeds.size());
        parallel_for(result.rows.size(), threads, [&](std::size_t cell) {
            const double value = sorted_values[cell / sorted_seeds.size()];
            const std::uint64_t seed = sorted_seeds[cell % sorted_seeds.size()];
            const ExperimentConfig c = apply_axis(config, axis, value, seed);
            result.rows[cell] = {value, seed, run_protocol(c, seed, 1).metrics};
        });
        return result;
    }

    std::vector<SummaryRow> summarize(const SweepResult &result)
    {
        struct Series
        {
            const char *column, *quantity, *algorithm;
        };
        static const Series series[] = {
            {"detection_error_rate", "detection_error_rate", "jdc"},
            {"detection_error_rate_full", "detection_error_rate", "jdc_reconstructed"},
            {"nmse_p", "nmse_p", "jdc"},
            {"nmse_c", "nmse_c", "restricted_ls"},
            {"nmse_c_plain", "nmse_c", "plain_ls"},
            {"sum_rate", "sum_rate", "pso"},
            {"sum_rate_rms", "sum_rate", "rms"},
            {"sum_rate_ergodic", "sum_rate", "pso_ergodic"},
        };

        const auto columns = metrics_columns();
        std::vector<SummaryRow> out;
        std::size_t begin = 0;
        while (begin < result.rows.size())
        {
            std::size_t end = begin;
            while (end < result.rows.size() && result.rows[end].value == result.rows[begin].value)
                ++end;
            for (const auto &s : series)
            {
                const auto col = static_cast<std::size_t>(
                    std::find(columns.begin(), columns.end(), std::string(s.column)) - columns.begin());
                double sum = 0.0, sum2 = 0.0;
                std::size_t n = 0;
                for (std::size_t i = begin; i < end; ++i)
                {
                    const double v = metric_values(result.rows[i].metrics)[col];
                    if (!std::isfinite(v))
                        continue;
                    sum += v;
                    sum2 += v * v;
                    ++n;
                }
                SummaryRow row;
                row.value = result.rows[begin].value;
                row.quantity = s.quantity;
                row.algorithm = s.algorithm;
                row.column = s.column;
                row.count = n;
                if (n > 0)
                {
                    const double dn = static_cast<double>(n);
                    row.mean = sum / dn;
                    row.std = n > 1 ? std::sqrt(std::max(0.0, (sum2 - dn * row.mean * row.mean) / (dn - 1.0))) : 0.0;
                    row.std_error = row.std / std::sqrt(dn);
                }
                else
                    row.mean = row.std = row.std_error = std::nan("");
                out.push_back(row);
            }
            begin = end;
        }
        return out;
    }
}
