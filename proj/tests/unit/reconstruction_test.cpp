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
#include <sixdma/metrics.hpp>
#include <sixdma/reconstruction.hpp>
#include <sixdma/scenario.hpp>

#include <gtest/gtest.h>

using namespace sixdma;

namespace
{
    struct Planted
    {
        CandidateGrid grid;
        std::vector<Vec3> dictionary;
        std::vector<std::size_t> index;
        std::vector<UserSpec> users;
        std::vector<std::size_t> sampled;
        RMatrix P, P_bar;
        IndicatorMatrix Z, Z_bar;
        RVector eps;
    };

    Planted planted(std::size_t K, std::uint64_t seed)
    {
        Planted p;
        p.grid = candidate_sphere_grid(64, 0.5, planar_offsets(4, 0.0625));
        p.dictionary = fibonacci_sphere(2000);
        Rng rng = make_rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, p.dictionary.size() - 1);
        for (std::size_t k = 0; k < K; ++k)
            p.index.push_back(pick(rng));
        p.users = planted_scenario(ScenarioConfig{}, p.dictionary, p.index, seed);
        for (std::size_t i = 0; i < 16; ++i)
            p.sampled.push_back(i * 4);
        p.P = true_power_matrix(p.users, p.grid);
        p.eps = relative_threshold(p.P, 0.01);
        p.Z = threshold_power(p.P, p.eps);
        p.P_bar.resize(16, static_cast<Eigen::Index>(K));
        p.Z_bar.resize(16, static_cast<Eigen::Index>(K));
        for (std::size_t i = 0; i < 16; ++i)
        {
            p.P_bar.row(static_cast<Eigen::Index>(i)) = p.P.row(static_cast<Eigen::Index>(p.sampled[i]));
            p.Z_bar.row(static_cast<Eigen::Index>(i)) = p.Z.row(static_cast<Eigen::Index>(p.sampled[i]));
        }
        return p;
    }
}

TEST(Reconstruction, PlantedNoiselessRecovery)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto p = planted(8, seed);
        const auto rec = reconstruct_power(p.P_bar, p.Z_bar, p.grid, p.sampled, p.dictionary, p.eps);
        for (std::size_t k = 0; k < p.users.size(); ++k)
        {
            if (p.Z_bar.col(static_cast<Eigen::Index>(k)).sum() == 0)
                continue;
            EXPECT_EQ(rec.direction_index[k], p.index[k]);
            EXPECT_NEAR(rec.multipath_power(static_cast<Eigen::Index>(k)), p.users[k].multipath_power,
                        1e-9 * p.users[k].multipath_power);
            const auto col = static_cast<Eigen::Index>(k);
            EXPECT_LT((rec.power.col(col) - p.P.col(col)).norm(), 1e-9 * p.P.col(col).norm());
        }
        EXPECT_EQ(rec.sparsity, threshold_power(rec.power, p.eps));
    }
}

TEST(Reconstruction, SingleColumnIsClosedFormLs)
{
    const auto p = planted(3, 7);
    const std::vector<Vec3> dictionary = {doa_vector(0.2, 1.0)};
    RMatrix noisy = p.P_bar;
    Rng rng = make_rng(8);
    for (Eigen::Index i = 0; i < noisy.size(); ++i)
        noisy(i) *= uniform(rng, 0.5, 1.5);
    const auto rec = reconstruct_power(noisy, p.Z_bar, p.grid, p.sampled, dictionary, p.eps);
    for (Eigen::Index k = 0; k < noisy.cols(); ++k)
    {
        double vv = 0.0, vp = 0.0;
        for (Eigen::Index i = 0; i < noisy.rows(); ++i)
        {
            if (!p.Z_bar(i, k))
                continue;
            const double v = 4.0 * antenna_gain(p.grid.poses[p.sampled[static_cast<std::size_t>(i)]].rotation,
                                                dictionary[0]);
            vv += v * v;
            vp += v * noisy(i, k);
        }
        if (vv == 0.0)
            continue;
        EXPECT_NEAR(rec.multipath_power(k), std::max(0.0, vp / vv), 1e-12 * std::abs(vp / vv));
    }
}

TEST(Reconstruction, ScalingHomogeneity)
{
    const auto p = planted(6, 9);
    RMatrix noisy = p.P_bar;
    Rng rng = make_rng(10);
    for (Eigen::Index i = 0; i < noisy.size(); ++i)
        noisy(i) *= uniform(rng, 0.7, 1.3);
    const auto a = reconstruct_power(noisy, p.Z_bar, p.grid, p.sampled, p.dictionary, p.eps);
    const auto b = reconstruct_power(2.0 * noisy, p.Z_bar, p.grid, p.sampled, p.dictionary, 2.0 * p.eps);
    EXPECT_EQ(a.direction_index, b.direction_index);
    for (Eigen::Index k = 0; k < noisy.cols(); ++k)
        EXPECT_NEAR(b.multipath_power(k), 2.0 * a.multipath_power(k), 1e-12 * a.multipath_power(k));
}

TEST(Reconstruction, EmptySupportFlagged)
{
    auto p = planted(3, 11);
    p.Z_bar.col(1).setZero();
    const auto rec = reconstruct_power(p.P_bar, p.Z_bar, p.grid, p.sampled, p.dictionary, p.eps);
    EXPECT_EQ(rec.empty_support_users, std::vector<std::size_t>{1});
    EXPECT_EQ(rec.power.col(1).norm(), 0.0);
    EXPECT_EQ(rec.sparsity.col(1).sum(), 0);
}

TEST(Reconstruction, ShapeChecks)
{
    const auto p = planted(3, 12);
    EXPECT_THROW(reconstruct_power(p.P_bar.topRows(5), p.Z_bar, p.grid, p.sampled, p.dictionary, p.eps),
                 ShapeMismatch);
    EXPECT_THROW(reconstruct_power(p.P_bar, p.Z_bar, p.grid, p.sampled, std::vector<Vec3>{}, p.eps),
                 std::invalid_argument);
    EXPECT_THROW(reconstruct_power(p.P_bar, p.Z_bar, p.grid, p.sampled, p.dictionary, RVector::Ones(2)),
                 ShapeMismatch);
}
