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

#include <sixdma/errors.hpp>
#include <sixdma/io.hpp>
#include <sixdma/metrics.hpp>
#include <sixdma/protocol.hpp>

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

using namespace sixdma;

namespace
{
    ExperimentConfig small_config()
    {
        ExperimentConfig c;
        c.grid.candidates = 32;
        c.grid.sampled = 8;
        c.grid.surfaces = 4;
        c.scenario.users = 6;
        c.estimation.dictionary_size = 2000;
        c.pso.particles = 30;
        c.pso.iterations = 50;
        c.rms_samples = 20;
        c.ergodic_trials = 5;
        return c;
    }
}

TEST(Protocol, SampledPoses)
{
    EXPECT_EQ(sampled_poses(64, 16), (std::vector<std::size_t>{0, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 52,
                                                                56, 60}));
    EXPECT_EQ(sampled_poses(10, 4), (std::vector<std::size_t>{0, 2, 5, 7}));
    EXPECT_THROW(sampled_poses(4, 5), std::invalid_argument);
}

TEST(Protocol, NoisePowerFromSnr)
{
    RMatrix P(2, 2);
    P << 4.0, 0.0, 8.0, 12.0;
    IndicatorMatrix Z(2, 2);
    Z << 1, 0, 1, 1;
    ScenarioConfig s;
    s.snr_db = 10.0;
    s.transmit_power = 2.0;
    // Mean per-antenna power over active links (4 + 8 + 12) / 3 / N with N = 4
    EXPECT_NEAR(resolve_noise_power(s, P, Z, 4), 2.0 * 2.0 / 10.0, 1e-15);
    s.noise_power = 0.7;
    EXPECT_EQ(resolve_noise_power(s, P, Z, 4), 0.7);
    s.noise_power = 0.0;
    EXPECT_THROW(resolve_noise_power(s, P, IndicatorMatrix::Zero(2, 2), 4), ZeroReference);
}

TEST(Protocol, ValidateConfig)
{
    ExperimentConfig c = small_config();
    c.grid.sampled = 6;
    EXPECT_THROW(validate(c), std::invalid_argument);
    c = small_config();
    c.grid.antennas = 3;
    EXPECT_THROW(run_protocol(c, 1), std::invalid_argument);
    c = small_config();
    c.estimation.threshold_ratio = 1.5;
    EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(Protocol, FullRunProducesConsistentOutcome)
{
    const auto c = small_config();
    const auto out = run_protocol(c, 3);
    EXPECT_EQ(out.stages, 3);
    EXPECT_EQ(out.P_bar.rows(), 8);
    EXPECT_EQ(out.reconstruction.power.rows(), 32);
    EXPECT_EQ(out.pso.selection.sum(), 4);
    EXPECT_EQ(out.H_inst.rows(), 16);
    EXPECT_EQ(out.estimates.size(), 8u);
    const auto &m = out.metrics;
    for (double v : {m.detection_error_rate, m.detection_error_rate_full, m.nmse_p, m.sum_rate, m.sum_rate_rms,
                     m.sum_rate_ergodic})
        EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(m.sum_rate, 0.0);
}

TEST(Protocol, Deterministic)
{
    const auto c = small_config();
    const auto a = run_protocol(c, 4, 1);
    const auto b = run_protocol(c, 4, 1);
    const auto d = run_protocol(c, 4, 3);
    EXPECT_EQ(metrics_csv({{4, a.metrics}}), metrics_csv({{4, b.metrics}}));
    EXPECT_EQ(metrics_csv({{4, a.metrics}}), metrics_csv({{4, d.metrics}}));
    EXPECT_EQ(a.P_bar, d.P_bar);
    EXPECT_EQ(a.pso.trace, d.pso.trace);
    EXPECT_NE(metrics_csv({{4, a.metrics}}), metrics_csv({{4, run_protocol(c, 5).metrics}}));
}

TEST(Protocol, TruncatedRunReportsNan)
{
    RunOptions opt;
    opt.last_stage = 1;
    const auto out = run_protocol(small_config(), 6, opt);
    EXPECT_EQ(out.stages, 1);
    EXPECT_TRUE(std::isfinite(out.metrics.nmse_p));
    EXPECT_TRUE(std::isnan(out.metrics.sum_rate));
    EXPECT_TRUE(std::isnan(out.metrics.nmse_c));
    opt.last_stage = 2;
    const auto two = run_protocol(small_config(), 6, opt);
    EXPECT_TRUE(std::isfinite(two.metrics.sum_rate));
    EXPECT_TRUE(std::isnan(two.metrics.nmse_c));
}

TEST(Protocol, NoiselessStageThreeIsExact)
{
    // Vanishing noise and ample pilots: plain LS is exact, and so is the restricted estimate of every
    // selected surface whose detected support covers the true one
    ExperimentConfig c = small_config();
    c.scenario.snr_db = 200.0;
    c.estimation.pilot_length = 48;
    c.estimation.inst_pilot_length = 48;
    const std::size_t N = 4;
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto out = run_protocol(c, seed);
        EXPECT_LT(out.metrics.nmse_c_plain, 1e-10);
        const auto poses = selected_indices(out.pso.selection);
        for (std::size_t b = 0; b < poses.size(); ++b)
        {
            const auto m = static_cast<Eigen::Index>(poses[b]);
            bool superset = true;
            for (Eigen::Index k = 0; k < out.Z.cols(); ++k)
                superset = superset && (out.Z(m, k) == 0 || out.reconstruction.sparsity(m, k) == 1);
            const auto rows = static_cast<Eigen::Index>(b * N);
            const CMatrix truth = out.H_inst.middleRows(rows, N);
            if (!superset || truth.norm() == 0.0)
                continue;
            EXPECT_LT(nmse(truth, out.H_restricted.middleRows(rows, N)), 1e-10) << "seed " << seed << " pose " << m;
            ++covered;
        }
    }
    EXPECT_GT(covered, 0);
}

TEST(Protocol, DeskScaleRuntime)
{
    ExperimentConfig c;
    c.scenario.users = 12;
    const auto t0 = std::chrono::steady_clock::now();
    run_protocol(c, 1, 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(secs, 60.0);
}
