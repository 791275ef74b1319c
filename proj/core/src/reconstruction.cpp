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

#include "sixdma/reconstruction.hpp"
#include "sixdma/errors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace sixdma
{
    PowerReconstruction reconstruct_power(const RMatrix &P_bar, const IndicatorMatrix &Z_bar, const CandidateGrid &grid,
                                          const std::vector<std::size_t> &sampled, const std::vector<Vec3> &dictionary,
                                          const RVector &eps, const ElementPattern &pattern)
    {
        const auto Ms = static_cast<Eigen::Index>(sampled.size());
        const auto K = P_bar.cols();
        const auto M = static_cast<Eigen::Index>(grid.size());
        const auto G = static_cast<Eigen::Index>(dictionary.size());
        const double N = static_cast<double>(grid.antennas());

        if (P_bar.rows() != Ms || Z_bar.rows() != Ms || Z_bar.cols() != K)
            throw ShapeMismatch("reconstruct_power: P_bar and Z_bar must be " + std::to_string(Ms) + " x " +
                                std::to_string(K));
        if (eps.size() != 1 && eps.size() != K)
            throw ShapeMismatch("reconstruct_power: eps must have 1 or " + std::to_string(K) + " entries");
        if (G == 0)
            throw std::invalid_argument("reconstruct_power: dictionary is empty");
        for (auto m : sampled)
            if (m >= grid.size())
                throw std::out_of_range("reconstruct_power: sampled pose " + std::to_string(m) + " out of range");

        // V(i, g) = N g(u_{sampled_i}, f_g), shared by all users
        RMatrix V(Ms, G);
        for (Eigen::Index i = 0; i < Ms; ++i)
        {
            const Mat3 R = rotation_matrix(grid.poses[sampled[static_cast<std::size_t>(i)]].rotation);
            for (Eigen::Index g = 0; g < G; ++g)
                V(i, g) = N * antenna_gain(R, dictionary[static_cast<std::size_t>(g)], pattern);
        }

        PowerReconstruction out;
        out.power = RMatrix::Zero(M, K);
        out.directions.assign(static_cast<std::size_t>(K), Vec3::Zero());
        out.direction_index.assign(static_cast<std::size_t>(K), 0);
        out.multipath_power = RVector::Zero(K);

        std::vector<Mat3> rotations;
        rotations.reserve(grid.size());
        for (const auto &pose : grid.poses)
            rotations.push_back(rotation_matrix(pose.rotation));

        for (Eigen::Index k = 0; k < K; ++k)
        {
            std::vector<Eigen::Index> support;
            for (Eigen::Index i = 0; i < Ms; ++i)
                if (Z_bar(i, k))
                    support.push_back(i);
            if (support.empty())
            {
                out.empty_support_users.push_back(static_cast<std::size_t>(k));
                continue;
            }

            double best_residual = std::numeric_limits<double>::infinity();
            Eigen::Index best_g = -1;
            double best_t = 0.0;
            for (Eigen::Index g = 0; g < G; ++g)
            {
                double vv = 0.0, vp = 0.0;
                for (auto i : support)
                {
                    vv += V(i, g) * V(i, g);
                    vp += V(i, g) * P_bar(i, k);
                }
                if (vv == 0.0)
                    continue;
                const double t = std::max(0.0, vp / vv);
                double residual = 0.0;
                for (auto i : support)
                {
                    const double r = P_bar(i, k) - t * V(i, g);
                    residual += r * r;
                }
                if (residual < best_residual)
                {
                    best_residual = residual;
                    best_g = g;
                    best_t = t;
                }
            }
            if (best_g < 0)
            {
                // No dictionary direction illuminates any supported pose
                out.empty_support_users.push_back(static_cast<std::size_t>(k));
                continue;
            }

            const Vec3 &f = dictionary[static_cast<std::size_t>(best_g)];
            out.directions[static_cast<std::size_t>(k)] = f;
            out.direction_index[static_cast<std::size_t>(k)] = static_cast<std::size_t>(best_g);
            out.multipath_power(k) = best_t;
            for (Eigen::Index m = 0; m < M; ++m)
                out.power(m, k) = N * antenna_gain(rotations[static_cast<std::size_t>(m)], f, pattern) * best_t;
        }

        out.sparsity = threshold_power(out.power, eps.size() == 1 ? RVector::Constant(K, eps(0)) : eps);
        return out;
    }

    PowerReconstruction reconstruct_power(const RMatrix &P_bar, const IndicatorMatrix &Z_bar, const CandidateGrid &grid,
                                          const std::vector<std::size_t> &sampled, std::size_t G, const RVector &eps,
                                          const ElementPattern &pattern)
    {
        return reconstruct_power(P_bar, Z_bar, grid, sampled, fibonacci_sphere(G), eps, pattern);
    }
}
