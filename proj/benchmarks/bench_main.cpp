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

#include <sixdma/channel.hpp>
#include <sixdma/geometry.hpp>
#include <sixdma/placement.hpp>
#include <sixdma/protocol.hpp>
#include <sixdma/reconstruction.hpp>
#include <sixdma/scenario.hpp>
#include <sixdma/stat_estimation.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace sixdma;

namespace
{
    struct Block
    {
        CMatrix X, Sc;
        ReceivedBlock block;
    };

    Block make_block(std::size_t L, std::size_t K)
    {
        Rng rng = make_rng(1);
        Block b;
        b.X = generate_pilots(L, K, rng);
        CMatrix H(4, static_cast<Eigen::Index>(K));
        for (Eigen::Index i = 0; i < H.size(); ++i)
            H(i) = complex_normal(rng);
        IndicatorVector z(static_cast<Eigen::Index>(K));
        for (Eigen::Index k = 0; k < z.size(); ++k)
            z(k) = k % 3 == 0 ? 1 : 0;
        b.block = simulate_uplink_block(b.X, H, z, 0.01, rng);
        b.Sc = sample_covariance(b.block.Y);
        return b;
    }

    SelectionProblem make_problem(std::size_t M, std::size_t B, std::size_t K)
    {
        ScenarioConfig config;
        config.users = K;
        const auto users = generate_scenario(config, 1);
        const auto grid = candidate_sphere_grid(M, 0.5, planar_offsets(4, 0.0625));
        SelectionProblem p;
        p.power = true_power_matrix(users, grid);
        p.distances = grid.distances;
        p.surfaces = B;
        p.min_distance = 0.125;
        p.noise_power = p.power.mean() / 4.0 / std::pow(10.0, 2.5);
        return p;
    }
}

// One O(L^2) coordinate step with the rank-one inverse update
static void BM_CoordinateUpdate(benchmark::State &state)
{
    const auto L = static_cast<std::size_t>(state.range(0));
    const auto b = make_block(L, 50);
    MlState s = MlState::initial(50, b.Sc, 0.01);
    std::size_t k = 0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(coordinate_update(s, k, b.X.col(static_cast<Eigen::Index>(k)), b.Sc));
        k = (k + 1) % 50;
    }
}
BENCHMARK(BM_CoordinateUpdate)->Arg(16)->Arg(40)->Arg(100);

// T K coordinate steps on one pose
static void BM_JdcPose(benchmark::State &state)
{
    const auto K = static_cast<std::size_t>(state.range(0));
    const auto b = make_block(40, K);
    JdcConfig cfg;
    cfg.noise_power = 0.01;
    cfg.threshold = RVector::Constant(1, 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(jdc_estimate_pose(b.X, b.block, cfg));
}
BENCHMARK(BM_JdcPose)->Arg(12)->Arg(50)->Unit(benchmark::kMillisecond);

// Dictionary scan of the power reconstruction
static void BM_ReconstructPower(benchmark::State &state)
{
    const auto G = static_cast<std::size_t>(state.range(0));
    ScenarioConfig config;
    const auto users = generate_scenario(config, 2);
    const auto grid = candidate_sphere_grid(64, 0.5, planar_offsets(4, 0.0625));
    const RMatrix P = true_power_matrix(users, grid);
    const RVector eps = relative_threshold(P, 0.01);
    const auto sampled = sampled_poses(64, 16);
    RMatrix P_bar(16, P.cols());
    for (std::size_t i = 0; i < 16; ++i)
        P_bar.row(static_cast<Eigen::Index>(i)) = P.row(static_cast<Eigen::Index>(sampled[i]));
    const IndicatorMatrix Z_bar = threshold_power(P_bar, eps);
    const auto dictionary = fibonacci_sphere(G);
    for (auto _ : state)
        benchmark::DoNotOptimize(reconstruct_power(P_bar, Z_bar, grid, sampled, dictionary, eps));
}
BENCHMARK(BM_ReconstructPower)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

// Penalized fitness of one particle
static void BM_Fitness(benchmark::State &state)
{
    const auto p = make_problem(static_cast<std::size_t>(state.range(0)), 8, 16);
    Rng rng = make_rng(3);
    RVector s(p.power.rows());
    for (Eigen::Index m = 0; m < s.size(); ++m)
        s(m) = uniform(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(fitness(s, p, 100.0));
}
BENCHMARK(BM_Fitness)->Arg(64)->Arg(256);

// Full PSO run at desk scale
static void BM_Pso(benchmark::State &state)
{
    const auto p = make_problem(64, 8, 16);
    PsoConfig cfg;
    cfg.seed = 4;
    for (auto _ : state)
        benchmark::DoNotOptimize(pso_optimize(p, cfg));
}
BENCHMARK(BM_Pso)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
