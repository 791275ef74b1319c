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

#ifndef SIXDMA_PROTOCOL_HPP
#define SIXDMA_PROTOCOL_HPP

#include "sixdma/channel.hpp"
#include "sixdma/geometry.hpp"
#include "sixdma/placement.hpp"
#include "sixdma/reconstruction.hpp"
#include "sixdma/scenario.hpp"
#include "sixdma/stat_estimation.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sixdma
{
    struct GridConfig
    {
        std::size_t candidates = 64;  // M
        std::size_t sampled = 16;     // M_bar, poses visited in stage I
        std::size_t surfaces = 4;     // B
        std::size_t antennas = 4;     // N, a perfect square
        double site_side = 1.0;       // Side of the cubic site region, meters
        double radius = 0.0;          // Sphere radius; 0 selects site_side / 2
        double spacing = 0.0;         // Antenna spacing; 0 selects wavelength / 2
        double min_distance = 0.125;  // d_min between selected surfaces, meters
    };

    struct EstimationConfig
    {
        std::size_t pilot_length = 40;      // L in stage I
        std::size_t inst_pilot_length = 24; // L in stage III
        std::size_t iterations = 30;        // T
        std::size_t dictionary_size = 10000; // G
        double threshold_ratio = 0.01;      // eps_k = ratio * max_m P[m,k]
        FadingModel fading = FadingModel::cluster;
    };

    struct ExperimentConfig
    {
        ScenarioConfig scenario;
        GridConfig grid;
        EstimationConfig estimation;
        PsoConfig pso;                       // The seed field is replaced by a per-run derived seed
        std::size_t rms_samples = 100;       // Random-max-sampling baseline
        std::size_t ergodic_trials = 20;     // Monte-Carlo draws for the ergodic rate of the PSO selection
        std::vector<std::uint64_t> seeds{1}; // Seeds used by sweeps
        std::string output_dir = "out";
    };

    void validate(const ExperimentConfig &config);

    // Candidate grid of the configuration
    CandidateGrid make_grid(const ExperimentConfig &config);

    // Indices floor(i M / M_bar), i = 0 .. M_bar - 1
    std::vector<std::size_t> sampled_poses(std::size_t M, std::size_t M_bar);

    // sigma^2 such that the mean per-antenna received SNR over active links equals snr_db at the configured
    // transmit power; returns scenario.noise_power when that is set
    double resolve_noise_power(const ScenarioConfig &config, const RMatrix &P, const IndicatorMatrix &Z,
                               std::size_t N);

    struct MetricsReport
    {
        double detection_error_rate = 0.0;      // Z_bar vs Z on the sampled poses
        double miss_rate = 0.0;
        double false_alarm_rate = 0.0;
        double detection_error_rate_full = 0.0; // Z_hat vs Z on all candidate poses
        double nmse_p = 0.0;                    // P_hat vs P
        double nmse_c = 0.0;                    // Support-restricted LS at the selected poses, NaN if underdetermined
        double nmse_c_plain = 0.0;              // Plain LS, NaN when L < K
        double sum_rate = 0.0;                  // C(PSO selection) on the true P
        double sum_rate_rms = 0.0;              // C(RMS selection) on the true P
        double sum_rate_ergodic = 0.0;          // Monte-Carlo ergodic rate of the PSO selection
        int pso_repaired = 0;
        int empty_support_users = 0;
    };

    struct StageTimings
    {
        double statistical = 0.0;   // Seconds
        double placement = 0.0;
        double instantaneous = 0.0;
    };

    struct ProtocolOutcome
    {
        std::uint64_t seed = 0;
        MetricsReport metrics;
        StageTimings timings;
        double noise_power = 0.0;
        std::vector<std::size_t> sampled;    // Stage-I poses
        RMatrix P;                           // True power
        IndicatorMatrix Z;                   // True sparsity
        RVector threshold;                   // Per-user eps
        RMatrix P_bar;                       // Stage-I estimates, one row per sampled pose
        IndicatorMatrix Z_bar;
        std::vector<PoseEstimate> estimates; // Per-pose objective values and step counts
        PowerReconstruction reconstruction;  // P_hat, Z_hat
        PsoResult pso;
        IndicatorVector rms_selection;
        CMatrix H_inst;       // True channel at the selected poses, (B N) x K
        CMatrix H_restricted; // Support-restricted estimate, empty when a surface detects more users than pilots
        CMatrix H_plain;      // Plain LS estimate, empty when L < K
        int stages = 0;       // Number of stages that ran
    };

    struct RunOptions
    {
        std::size_t threads = 1;
        int last_stage = 3;                           // 1: statistical CSI, 2: adds placement, 3: full protocol
        const std::vector<UserSpec> *users = nullptr; // Replay these users instead of drawing them from the seed
    };

    // Stage I on the sampled poses, stage II on P_hat, stage III at the selected poses.
    // Results depend only on (config, seed, users), not on the number of threads.
    // Metrics of stages that did not run are NaN.
    ProtocolOutcome run_protocol(const ExperimentConfig &config, std::uint64_t seed, const RunOptions &options);
    ProtocolOutcome run_protocol(const ExperimentConfig &config, std::uint64_t seed, std::size_t threads = 1);
}

#endif
