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

#include <sixdma/sweep.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace sixdma;

namespace
{
    std::vector<std::uint64_t> seeds(std::uint64_t n)
    {
        std::vector<std::uint64_t> s;
        for (std::uint64_t i = 1; i <= n; ++i)
            s.push_back(i);
        return s;
    }

    std::map<double, double> seed_mean(const SweepResult &r, double MetricsReport::*field)
    {
        std::map<double, double> sum, count;
        for (const auto &row : r.rows)
        {
            sum[row.value] += row.metrics.*field;
            count[row.value] += 1.0;
        }
        for (auto &[v, s] : sum)
            s /= count[v];
        return sum;
    }
}

TEST(Sweep, AxisNames)
{
    for (auto axis : {SweepAxis::pilot_length, SweepAxis::transmit_power, SweepAxis::user_count})
        EXPECT_EQ(parse_sweep_axis(to_string(axis)), axis);
    EXPECT_THROW(parse_sweep_axis("bandwidth"), std::invalid_argument);
}

TEST(Sweep, ApplyAxis)
{
    const ExperimentConfig base;
    const auto l = apply_axis(base, SweepAxis::pilot_length, 12, 1);
    EXPECT_EQ(l.estimation.pilot_length, 12u);
    EXPECT_EQ(l.estimation.inst_pilot_length, 12u);
    const auto k = apply_axis(base, SweepAxis::user_count, 20, 1);
    EXPECT_EQ(k.scenario.users, 20u);
    const auto p = apply_axis(base, SweepAxis::transmit_power, 10.0, 1);
    EXPECT_EQ(p.scenario.transmit_power, 10.0);
    EXPECT_GT(p.scenario.noise_power, 0.0);
    EXPECT_THROW(apply_axis(base, SweepAxis::pilot_length, 2.5, 1), std::invalid_argument);
}

TEST(Sweep, DetectionErrorDecreasesWithPilotLength)
{
    ExperimentConfig c;
    c.scenario.users = 12;
    const auto r = sweep(c, SweepAxis::pilot_length, {10, 20, 40}, seeds(20), 1);
    ASSERT_EQ(r.rows.size(), 60u);
    const auto mean = seed_mean(r, &MetricsReport::detection_error_rate);
    EXPECT_GT(mean.at(10), mean.at(20));
    EXPECT_GT(mean.at(20), mean.at(40));
}

TEST(Sweep, SumRateGrowsWithTransmitPower)
{
    ExperimentConfig c;
    c.scenario.users = 8;
    c.pso.particles = 40;
    c.pso.iterations = 60;
    const auto r = sweep(c, SweepAxis::transmit_power, {0.1, 1.0, 10.0}, seeds(5), 1);
    const auto mean = seed_mean(r, &MetricsReport::sum_rate);
    EXPECT_LE(mean.at(0.1), mean.at(1.0));
    EXPECT_LE(mean.at(1.0), mean.at(10.0));
}

TEST(Sweep, PsoNotWorseThanRmsAcrossUserCounts)
{
    ExperimentConfig c;
    c.grid.surfaces = 8;
    const auto r = sweep(c, SweepAxis::user_count, {8, 16}, seeds(10), 1);
    const auto pso = seed_mean(r, &MetricsReport::sum_rate);
    const auto rms = seed_mean(r, &MetricsReport::sum_rate_rms);
    for (const auto &[k, v] : pso)
        EXPECT_GE(v, rms.at(k)) << "K = " << k;
}

TEST(Sweep, SummaryStatistics)
{
    SweepResult r;
    r.axis = SweepAxis::pilot_length;
    for (std::uint64_t s = 1; s <= 3; ++s)
    {
        SweepRow row;
        row.value = 10;
        row.seed = s;
        row.metrics.nmse_p = static_cast<double>(s);
        row.metrics.nmse_c = s == 2 ? std::nan("") : 1.0;
        r.rows.push_back(row);
    }
    const auto rows = summarize(r);
    bool seen_p = false, seen_c = false;
    for (const auto &row : rows)
    {
        if (row.column == "nmse_p")
        {
            seen_p = true;
            EXPECT_DOUBLE_EQ(row.mean, 2.0);
            EXPECT_DOUBLE_EQ(row.std, 1.0);
            EXPECT_DOUBLE_EQ(row.std_error, 1.0 / std::sqrt(3.0));
            EXPECT_EQ(row.count, 3u);
            EXPECT_EQ(row.algorithm, "jdc");
        }
        if (row.column == "nmse_c")
        {
            seen_c = true;
            EXPECT_EQ(row.count, 2u);
            EXPECT_EQ(row.algorithm, "restricted_ls");
        }
    }
    EXPECT_TRUE(seen_p && seen_c);
}

TEST(Sweep, IndependentOfThreadCount)
{
    ExperimentConfig c;
    c.grid.candidates = 32;
    c.grid.sampled = 8;
    c.scenario.users = 6;
    c.estimation.dictionary_size = 1000;
    c.pso.particles = 20;
    c.pso.iterations = 20;
    const auto a = sweep(c, SweepAxis::pilot_length, {8, 16}, seeds(3), 1);
    const auto b = sweep(c, SweepAxis::pilot_length, {8, 16}, seeds(3), 3);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
        EXPECT_EQ(a.rows[i].metrics.nmse_p, b.rows[i].metrics.nmse_p);
        EXPECT_EQ(a.rows[i].metrics.sum_rate, b.rows[i].metrics.sum_rate);
    }
}
