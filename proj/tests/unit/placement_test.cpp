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
#include <sixdma/channel.hpp>
#include <sixdma/geometry.hpp>
#include <sixdma/placement.hpp>
#include <sixdma/scenario.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace sixdma;

namespace
{
    // Random instance on a sphere grid with the default scenario
    SelectionProblem random_problem(std::size_t M, std::size_t B, std::size_t K, std::uint64_t seed,
                                    double d_min = 0.125)
    {
        ScenarioConfig config;
        config.users = K;
        const auto users = generate_scenario(config, seed);
        const auto grid = candidate_sphere_grid(M, 0.5, planar_offsets(4, 0.0625));
        SelectionProblem p;
        p.power = true_power_matrix(users, grid);
        p.distances = grid.distances;
        p.surfaces = B;
        p.min_distance = d_min;
        p.transmit_power = 1.0;
        p.noise_power = p.power.mean() / 4.0 / std::pow(10.0, 2.5);
        return p;
    }

    double rate_of(const std::vector<std::size_t> &idx, const SelectionProblem &p)
    {
        return sum_rate_upper(selection_from_indices(idx, static_cast<std::size_t>(p.power.rows())), p);
    }
}

TEST(SumRate, Basics)
{
    RMatrix P(3, 1);
    P << 2.0, 5.0, 1.0;
    EXPECT_EQ(sum_rate_upper(IndicatorVector::Zero(3), P, 1.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(sum_rate_upper(selection_from_indices({1}, 3), P, 2.0, 0.5), std::log2(1.0 + 2.0 * 5.0 / 0.5));

    const auto p = random_problem(16, 4, 6, 1);
    Rng rng = make_rng(2);
    for (int i = 0; i < 50; ++i)
    {
        IndicatorVector s(16);
        for (Eigen::Index m = 0; m < 16; ++m)
            s(m) = uniform(rng) < 0.3 ? 1 : 0;
        const double base = sum_rate_upper(s, p);
        for (Eigen::Index m = 0; m < 16; ++m)
            if (!s(m))
            {
                IndicatorVector t = s;
                t(m) = 1;
                EXPECT_GE(sum_rate_upper(t, p), base);
            }
    }
}

TEST(SumRate, SelectionHelpers)
{
    const auto s = selection_from_indices({0, 3, 4}, 6);
    EXPECT_EQ(selected_indices(s), (std::vector<std::size_t>{0, 3, 4}));
    RVector r(4);
    r << 0.2, 0.5, 0.51, 0.99;
    IndicatorVector expected(4);
    expected << 0, 1, 1, 1;
    EXPECT_EQ(round_selection(r), expected);
    EXPECT_THROW(selection_from_indices({6}, 6), std::out_of_range);
}

TEST(Ergodic, EmptySelectionIsZero)
{
    ScenarioConfig config;
    config.users = 3;
    const auto users = generate_scenario(config, 3);
    const auto grid = candidate_sphere_grid(8, 0.5, planar_offsets(4, 0.0625));
    const RMatrix P = true_power_matrix(users, grid);
    const ChannelSampler sampler(users, grid, threshold_power(P, relative_threshold(P, 0.01)));
    Rng rng = make_rng(4);
    const auto r = ergodic_sum_rate_mc(IndicatorVector::Zero(8), sampler, 1.0, 1e-12, 20, rng);
    EXPECT_EQ(r.mean, 0.0);
    EXPECT_EQ(r.std_error, 0.0);
}

TEST(Ergodic, ScalarOracle)
{
    Rng rng = make_rng(5);
    UserSpec user = make_user(Vec3(-50.0, 5.0, 3.0), 100, 3.0, 0.125, rng);
    const auto grid = candidate_sphere_grid(4, 0.5, {Vec3::Zero()});
    const RMatrix P = true_power_matrix({user}, grid);
    Eigen::Index best;
    P.col(0).maxCoeff(&best);
    const ChannelSampler sampler({user}, grid, threshold_power(P, relative_threshold(P, 0.01)));
    const double sigma2 = P(best, 0) / 100.0;
    const auto s = selection_from_indices({static_cast<std::size_t>(best)}, 4);
    const std::size_t trials = 4000;
    const auto mc = ergodic_sum_rate_mc(s, sampler, 1.0, sigma2, trials, rng);

    // Direct draw of h = sqrt(g) sum_i sqrt(mu_i) exp(-j phi_i) with fresh phases
    const double g = antenna_gain(grid.poses[static_cast<std::size_t>(best)].rotation, user.cluster_doa);
    double sum = 0.0, sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t)
    {
        cplx h = 0.0;
        for (const auto &path : user.paths)
            h += std::sqrt(path.gain * g) * std::exp(cplx(0.0, -uniform_phase(rng)));
        const double c = std::log2(1.0 + std::norm(h) / sigma2);
        sum += c;
        sq += c * c;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sq / trials - mean * mean) / trials);
    EXPECT_LT(std::abs(mc.mean - mean), 3.0 * std::hypot(se, mc.std_error));
}

TEST(Ergodic, JensenBound)
{
    ScenarioConfig config;
    config.users = 8;
    const auto users = generate_scenario(config, 6);
    const auto grid = candidate_sphere_grid(32, 0.5, planar_offsets(4, 0.0625));
    const RMatrix P = true_power_matrix(users, grid);
    const ChannelSampler sampler(users, grid, threshold_power(P, relative_threshold(P, 0.01)));
    const double sigma2 = P.mean() / 4.0 / std::pow(10.0, 2.5);
    Rng rng = make_rng(7);
    for (int i = 0; i < 10; ++i)
    {
        std::vector<std::size_t> idx(32);
        for (std::size_t m = 0; m < 32; ++m)
            idx[m] = m;
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(4);
        const auto s = selection_from_indices(idx, 32);
        const auto mc = ergodic_sum_rate_mc(s, sampler, 1.0, sigma2, 200, rng);
        EXPECT_LE(mc.mean, sum_rate_upper(s, P, 1.0, sigma2) + 3.0 * mc.std_error);
    }
}

TEST(Penalty, Values)
{
    RMatrix D = RMatrix::Constant(6, 6, 1.0);
    D.diagonal().setZero();
    D(0, 1) = D(1, 0) = 0.0;
    const double d_min = 0.5;
    RVector s = RVector::Zero(6);
    s(2) = s(3) = 1.0;
    EXPECT_EQ(penalty(s, D, d_min, 2), 0.0);
    s(4) = s(5) = 0.8;
    EXPECT_EQ(penalty(s, D, d_min, 2), 2.0);
    s.setZero();
    s(0) = s(1) = 0.9;
    EXPECT_EQ(penalty(s, D, d_min, 2), 1.0);
}

TEST(Fitness, PenaltyBehaviour)
{
    const auto p = random_problem(12, 3, 4, 8);
    RVector feasible = RVector::Zero(12);
    feasible(0) = feasible(5) = feasible(9) = 1.0;
    const IndicatorVector s = round_selection(feasible);
    ASSERT_TRUE(is_feasible(s, p));
    EXPECT_DOUBLE_EQ(fitness(feasible, p, 100.0), sum_rate_upper(s, p));

    RVector infeasible = RVector::Ones(12);
    double prev = std::numeric_limits<double>::infinity();
    for (double tau : {0.0, 1.0, 10.0, 1e3, 1e6})
    {
        const double f = fitness(infeasible, p, tau);
        EXPECT_LE(f, prev);
        prev = f;
    }
    EXPECT_LT(fitness(infeasible, p, 1e6), fitness(feasible, p, 1e6));
}

TEST(Repair, ProducesFeasibleSelections)
{
    const auto p = random_problem(24, 4, 6, 9, 0.3);
    Rng rng = make_rng(10);
    for (int i = 0; i < 50; ++i)
    {
        IndicatorVector s(24);
        for (Eigen::Index m = 0; m < 24; ++m)
            s(m) = uniform(rng) < 0.3 ? 1 : 0;
        EXPECT_TRUE(is_feasible(repair_selection(s, p), p));
    }
    SelectionProblem impossible = p;
    impossible.min_distance = 10.0;
    EXPECT_THROW(repair_selection(IndicatorVector::Zero(24), impossible), InfeasibleProblem);
}

TEST(Pso, OnlyFeasiblePoint)
{
    auto p = random_problem(4, 4, 3, 11);
    PsoConfig cfg;
    cfg.particles = 10;
    cfg.iterations = 20;
    const auto r = pso_optimize(p, cfg);
    EXPECT_EQ(r.selection, IndicatorVector::Ones(4));
}

TEST(Pso, TraceMonotoneAndDeterministic)
{
    const auto p = random_problem(32, 4, 8, 12);
    PsoConfig cfg;
    cfg.particles = 30;
    cfg.iterations = 60;
    cfg.seed = 5;
    const auto a = pso_optimize(p, cfg);
    const auto b = pso_optimize(p, cfg);
    ASSERT_EQ(a.trace.size(), 61u);
    for (std::size_t i = 1; i < a.trace.size(); ++i)
        EXPECT_GE(a.trace[i], a.trace[i - 1]);
    EXPECT_EQ(a.selection, b.selection);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_TRUE(is_feasible(a.selection, p));
    EXPECT_DOUBLE_EQ(a.sum_rate, sum_rate_upper(a.selection, p));
}

TEST(Pso, NearBruteForceOnSmallInstances)
{
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const auto p = random_problem(12, 3, 6, seed);
        PsoConfig cfg;
        cfg.seed = seed;
        const double best = sum_rate_upper(brute_force_select(p), p);
        within += pso_optimize(p, cfg).sum_rate >= 0.95 * best ? 1 : 0;
    }
    EXPECT_GE(within, 18);
}

TEST(BruteForce, TrivialAndHandInstance)
{
    auto p = random_problem(3, 3, 2, 13, 0.0);
    EXPECT_EQ(brute_force_select(p), IndicatorVector::Ones(3));

    // Five poses, two users; poses 0 and 1 are too close to be selected together
    SelectionProblem h;
    h.power.resize(5, 2);
    h.power << 9.0, 0.0, 8.0, 0.0, 0.0, 3.0, 1.0, 1.0, 0.5, 2.5;
    h.distances = RMatrix::Constant(5, 5, 1.0);
    h.distances.diagonal().setZero();
    h.distances(0, 1) = h.distances(1, 0) = 0.1;
    h.surfaces = 2;
    h.min_distance = 0.5;
    h.transmit_power = 1.0;
    h.noise_power = 1.0;
    std::vector<std::size_t> best_pair;
    double best = -1.0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
        {
            if (i == 0 && j == 1)
                continue;
            const double c = std::log2(1.0 + h.power(i, 0) + h.power(j, 0)) +
                             std::log2(1.0 + h.power(i, 1) + h.power(j, 1));
            if (c > best)
            {
                best = c;
                best_pair = {i, j};
            }
        }
    // log2(10) + log2(4) beats every other allowed pair, e.g. log2(10.5) + log2(3.5) for poses 0, 4
    EXPECT_EQ(best_pair, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(selected_indices(brute_force_select(h)), best_pair);
    EXPECT_NEAR(rate_of(best_pair, h), std::log2(10.0) + std::log2(4.0), 1e-12);
}

TEST(BruteForce, TooLarge)
{
    const auto p = random_problem(64, 8, 4, 14);
    EXPECT_THROW(brute_force_select(p), InstanceTooLarge);
}

TEST(Rms, FeasibleDeterministicAndConvergent)
{
    const auto p = random_problem(10, 3, 5, 15);
    const auto a = rms_baseline(p, 50, 7);
    EXPECT_TRUE(is_feasible(a, p));
    EXPECT_EQ(a, rms_baseline(p, 50, 7));
    EXPECT_DOUBLE_EQ(sum_rate_upper(rms_baseline(p, 5000, 8), p), sum_rate_upper(brute_force_select(p), p));
    SelectionProblem impossible = p;
    impossible.min_distance = 10.0;
    EXPECT_THROW(rms_baseline(impossible, 10, 1, 100), InfeasibleProblem);
}
