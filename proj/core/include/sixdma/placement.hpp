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

#ifndef SIXDMA_PLACEMENT_HPP
#define SIXDMA_PLACEMENT_HPP

#include "sixdma/channel.hpp"
#include "sixdma/random.hpp"
#include "sixdma/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sixdma
{
    // Selection of B candidate poses out of M
    struct SelectionProblem
    {
        RMatrix power;              // M x K average channel power used for the rate bound
        RMatrix distances;          // M x M pairwise pose distances
        std::size_t surfaces = 4;   // B
        double min_distance = 0.0;  // d_min, meters
        double transmit_power = 1.0; // p
        double noise_power = 1.0;   // sigma^2
    };

    void validate(const SelectionProblem &problem);

    // Sum over users of log2(1 + p / sigma2 sum_m s_m P[m,k])
    double sum_rate_upper(const IndicatorVector &s, const RMatrix &P, double p, double sigma2);
    double sum_rate_upper(const IndicatorVector &s, const SelectionProblem &problem);

    // s_m = 1 for every listed pose
    IndicatorVector selection_from_indices(const std::vector<std::size_t> &indices, std::size_t M);
    std::vector<std::size_t> selected_indices(const IndicatorVector &s);

    // Elementwise round to 0 / 1; values are expected in [0, 1]
    IndicatorVector round_selection(const RVector &s);

    struct RateEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
        std::size_t trials = 0;
    };

    // Monte-Carlo mean of log2 det(I_K + p / sigma2 H^H (diag(s) kron I_N) H) over fresh channel draws
    RateEstimate ergodic_sum_rate_mc(const IndicatorVector &s, const ChannelSampler &sampler, double p, double sigma2,
                                     std::size_t trials, Rng &rng);

    // Pairs of selected poses closer than d_min plus |B - 1^T s|, evaluated on round(s)
    double penalty(const RVector &s, const RMatrix &D, double d_min, std::size_t B);

    // C(round(s)) - tau Q(s)
    double fitness(const RVector &s, const SelectionProblem &problem, double tau);

    bool is_feasible(const IndicatorVector &s, const SelectionProblem &problem);

    // Greedy repair: drop poses involved in distance violations and surplus poses with the smallest rate
    // contribution, then add the feasible pose with the largest marginal rate until B poses are selected.
    // Throws InfeasibleProblem if no feasible pose can be added.
    IndicatorVector repair_selection(const IndicatorVector &s, const SelectionProblem &problem);

    struct PsoConfig
    {
        std::size_t particles = 100;  // I
        std::size_t iterations = 200; // T_PSO
        double inertia = 0.729;       // kappa
        double c1 = 1.494;            // Individual learning factor
        double c2 = 1.494;            // Global learning factor
        double penalty_weight = 0.0;  // tau; 0 selects 10 C(all poses)
        double velocity_limit = 1.0;  // Velocities are clamped to [-limit, limit]
        std::uint64_t seed = 0;
    };

    void validate(const PsoConfig &config);

    struct PsoResult
    {
        IndicatorVector selection;  // Feasible, after repair if needed
        std::vector<double> trace;  // Global-best fitness after initialization and after every iteration
        double penalty_weight = 0.0; // tau actually used
        double sum_rate = 0.0;      // C(selection)
        bool repaired = false;      // round(s_gbest) was infeasible
    };

    // Penalty PSO over the relaxed box [0,1]^M. Particles start at random B-subsets.
    PsoResult pso_optimize(const SelectionProblem &problem, const PsoConfig &config = {});

    // Exhaustive maximization of C over feasible selections; ties go to the lexicographically first subset
    // - throws InstanceTooLarge if C(M, B) > max_subsets
    IndicatorVector brute_force_select(const SelectionProblem &problem, double max_subsets = 1e6);

    // Best of `samples` uniformly drawn feasible B-subsets
    // - stops after max_failures rejected draws; throws InfeasibleProblem if none was feasible
    IndicatorVector rms_baseline(const SelectionProblem &problem, std::size_t samples, std::uint64_t seed,
                                 std::size_t max_failures = 10000);
}

#endif
