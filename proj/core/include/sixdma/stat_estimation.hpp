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

#ifndef SIXDMA_STAT_ESTIMATION_HPP
#define SIXDMA_STAT_ESTIMATION_HPP

#include "sixdma/random.hpp"
#include "sixdma/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sixdma
{
    // L x K matrix with i.i.d. CN(0,1) entries
    CMatrix generate_pilots(std::size_t L, std::size_t K, Rng &rng);
    CMatrix generate_pilots(std::size_t L, std::size_t K, std::uint64_t seed);

    // Pilot observation of one pose
    struct ReceivedBlock
    {
        CMatrix Y;             // L x N
        std::size_t pose = 0; // Candidate pose index
    };

    // Y = X diag(z) H^T + W with W i.i.d. CN(0, sigma2)
    // - X is L x K, H is N x K (column k holds the channel of user k), z has K entries
    ReceivedBlock simulate_uplink_block(const CMatrix &X, const CMatrix &H, const IndicatorVector &z, double sigma2,
                                        Rng &rng, std::size_t pose = 0);
    ReceivedBlock simulate_uplink_block(const CMatrix &X, const CMatrix &H, const IndicatorVector &z, double sigma2,
                                        std::uint64_t seed, std::size_t pose = 0);

    // (1/N) Y Y^H
    CMatrix sample_covariance(const CMatrix &Y);

    // Reference negative log-likelihood ln det(S) + tr(S^-1 Sc), S = X diag(eta) X^H + sigma2 I,
    // evaluated by direct factorization
    double nll(const RVector &eta, const CMatrix &X, const CMatrix &sample_cov, double sigma2);

    // Coordinate-descent state of one pose
    struct MlState
    {
        RVector eta;       // Power state, K entries, non-negative
        CMatrix sigma_inv; // Maintained inverse covariance, L x L
        double nll = 0.0;  // Tracked objective value

        // eta = 0, sigma_inv = I / sigma2
        static MlState initial(std::size_t K, const CMatrix &sample_cov, double sigma2);
    };

    struct CoordinateStep
    {
        double a = 0.0;       // x^H S^-1 x
        double b = 0.0;       // x^H S^-1 Sc S^-1 x
        double nu_star = 0.0; // Unconstrained minimizer (b - a) / a^2
        double nu = 0.0;      // Applied step max(nu_star, -eta_k)
    };

    // Closed-form step along coordinate k without modifying the state
    CoordinateStep optimal_step(const MlState &state, std::size_t k, const CVector &x_k, const CMatrix &sample_cov);

    // Apply the optimal clamped step to coordinate k; sigma_inv is updated by a rank-one correction in O(L^2)
    CoordinateStep coordinate_update(MlState &state, std::size_t k, const CVector &x_k, const CMatrix &sample_cov);

    struct JdcConfig
    {
        std::size_t iterations = 30; // T, each pose performs T K random coordinate steps
        RVector threshold;           // Per-user detection threshold on N eta (size K), or a single entry for all users
        double noise_power = 1.0;    // sigma2, known to the estimator
        std::uint64_t schedule_seed = 0;
    };

    void validate(const JdcConfig &config, std::size_t K);

    // Sampled poses handled by one processing unit
    struct GroupAssignment
    {
        std::size_t index = 0;          // Group b
        std::vector<std::size_t> poses; // Member pose indices
    };

    // Contiguous blocks of equal size; throws if B does not divide the number of poses
    std::vector<GroupAssignment> partition_groups(const std::vector<std::size_t> &poses, std::size_t B);

    struct PoseEstimate
    {
        std::size_t pose = 0;
        RVector power;              // N eta, one row of P_bar
        IndicatorVector indicator;  // power > threshold, one row of Z_bar
        double nll = 0.0;           // Final objective
        std::size_t updates = 0;    // Coordinate steps performed
    };

    // Algorithm for a single pose; the coordinate schedule is seeded by (schedule_seed, pose)
    PoseEstimate jdc_estimate_pose(const CMatrix &X, const ReceivedBlock &block, const JdcConfig &config);

    // All poses of one group; blocks must be listed in the order of group.poses
    std::vector<PoseEstimate> jdc_estimate(const GroupAssignment &group, const CMatrix &X,
                                           const std::vector<ReceivedBlock> &blocks, const JdcConfig &config);
}

#endif
