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

#include "sixdma/protocol.hpp"
#include "sixdma/errors.hpp"
#include "sixdma/inst_estimation.hpp"
#include "sixdma/metrics.hpp"
#include "sixdma/parallel.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sixdma
{
    void validate(const ExperimentConfig &c)
    {
        validate(c.scenario);
        validate(c.pso);
        const auto &g = c.grid;
        if (g.candidates == 0 || g.sampled == 0 || g.surfaces == 0)
            throw std::invalid_argument("config: candidates, sampled and surfaces must be positive");
        if (g.sampled > g.candidates)
            throw std::invalid_argument("config: sampled poses exceed the number of candidates");
        if (g.sampled % g.surfaces != 0)
            throw std::invalid_argument("config: sampled poses must be divisible by the number of surfaces");
        if (g.surfaces > g.candidates)
            throw std::invalid_argument("config: more surfaces than candidate poses");
        if (!(g.site_side > 0.0) || !(g.radius >= 0.0) || !(g.spacing >= 0.0) || !(g.min_distance >= 0.0))
            throw std::invalid_argument("config: grid lengths must be non-negative and site_side positive");
        const auto &e = c.estimation;
        if (e.pilot_length == 0 || e.inst_pilot_length == 0 || e.iterations == 0 || e.dictionary_size == 0)
            throw std::invalid_argument("config: pilot lengths, iterations and dictionary_size must be positive");
        if (!(e.threshold_ratio > 0.0 && e.threshold_ratio < 1.0))
            throw std::invalid_argument("config: threshold_ratio must lie in (0, 1)");
        if (c.rms_samples == 0 || c.ergodic_trials == 0)
            throw std::invalid_argument("config: rms_samples and ergodic_trials must be positive");
    }

    CandidateGrid make_grid(const ExperimentConfig &config)
    {
        const auto &g = config.grid;
        const double spacing = g.spacing > 0.0 ? g.spacing : 0.5 * config.scenario.radio.wavelength;
        const double radius = g.radius > 0.0 ? g.radius : 0.5 * g.site_side;
        return candidate_sphere_grid(g.candidates, radius, planar_offsets(g.antennas, spacing));
    }

    std::vector<std::size_t> sampled_poses(std::size_t M, std::size_t M_bar)
    {
        if (M_bar == 0 || M_bar > M)
            throw std::invalid_argument("sampled_poses: need 0 < M_bar <= M");
        std::vector<std::size_t> out(M_bar);
        for (std::size_t i = 0; i < M_bar; ++i)
            out[i] = i * M / M_bar;
        return out;
    }

    double resolve_noise_power(const ScenarioConfig &config, const RMatrix &P, const IndicatorMatrix &Z, std::size_t N)
    {
        if (config.noise_power > 0.0)
            return config.noise_power;
        double sum = 0.0, count = 0.0;
        for (Eigen::Index k = 0; k < P.cols(); ++k)
            for (Eigen::Index m = 0; m < P.rows(); ++m)
                if (Z(m, k))
                {
                    sum += P(m, k) / static_cast<double>(N);
                    count += 1.0;
                }
        if (count == 0.0)
            throw ZeroReference("resolve_noise_power: no active link to reference the SNR to");
        return config.transmit_power * (sum / count) / std::pow(10.0, config.snr_db / 10.0);
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        double seconds_since(Clock::time_point t0)
        {
            return std::chrono::duration<double>(Clock::now() - t0).count();
        }
    }

    ProtocolOutcome run_protocol(const ExperimentConfig &config, std::uint64_t seed, std::size_t threads)
    {
        RunOptions options;
        options.threads = threads;
        return run_protocol(config, seed, options);
    }

    ProtocolOutcome run_protocol(const ExperimentConfig &config, std::uint64_t seed, const RunOptions &options)
    {
        validate(config);
        if (options.last_stage < 1 || options.last_stage > 3)
            throw std::invalid_argument("run_protocol: last_stage must be 1, 2 or 3");
        const std::size_t threads = options.threads;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const CandidateGrid grid = make_grid(config);
        const auto M = grid.size();
        const auto N = grid.antennas();
        const auto B = config.grid.surfaces;
        const double p = config.scenario.transmit_power;
        const auto &radio = config.scenario.radio;

        ProtocolOutcome out;
        out.seed = seed;

        const auto users = options.users ? *options.users : generate_scenario(config.scenario, seed);
        const auto K = users.size();
        if (K == 0)
            throw std::invalid_argument("run_protocol: scenario has no users");
        out.P = true_power_matrix(users, grid, radio);
        out.threshold = relative_threshold(out.P, config.estimation.threshold_ratio);
        out.Z = threshold_power(out.P, out.threshold);
        out.noise_power = resolve_noise_power(config.scenario, out.P, out.Z, N);

        // The estimators work in channel units: Y / sqrt(p) = X H^T + W, W ~ CN(0, sigma^2 / p)
        const double sigma2_eff = out.noise_power / p;
        const ChannelSampler sampler(users, grid, out.Z, radio, config.estimation.fading);

        // Stage I
        auto t0 = Clock::now();
        out.sampled = sampled_poses(M, config.grid.sampled);
        const auto groups = partition_groups(out.sampled, B);
        Rng pilot_rng = make_rng(seed, Stream::pilots_stat);
        const CMatrix X = generate_pilots(config.estimation.pilot_length, K, pilot_rng);

        JdcConfig jdc;
        jdc.iterations = config.estimation.iterations;
        jdc.threshold = out.threshold;
        jdc.noise_power = sigma2_eff;
        jdc.schedule_seed = derive_seed(seed, Stream::schedule);

        std::vector<std::vector<PoseEstimate>> per_group(groups.size());
        parallel_for(groups.size(), threads, [&](std::size_t b) {
            std::vector<ReceivedBlock> blocks;
            for (auto m : groups[b].poses)
            {
                Rng channel_rng = make_rng(seed, Stream::channel_stat, m);
                Rng noise_rng = make_rng(seed, Stream::noise_stat, m);
                const CMatrix H = sampler.sample_pose(m, channel_rng);
                const IndicatorVector z = out.Z.row(static_cast<Eigen::Index>(m)).transpose();
                blocks.push_back(simulate_uplink_block(X, H, z, sigma2_eff, noise_rng, m));
            }
            per_group[b] = jdc_estimate(groups[b], X, blocks, jdc);
        });

        const auto Ms = static_cast<Eigen::Index>(out.sampled.size());
        out.P_bar.resize(Ms, static_cast<Eigen::Index>(K));
        out.Z_bar.resize(Ms, static_cast<Eigen::Index>(K));
        IndicatorMatrix Z_sampled(Ms, static_cast<Eigen::Index>(K));
        Eigen::Index row = 0;
        for (const auto &group : per_group)
            for (const auto &est : group)
            {
                out.P_bar.row(row) = est.power.transpose();
                out.Z_bar.row(row) = est.indicator.transpose();
                Z_sampled.row(row) = out.Z.row(static_cast<Eigen::Index>(est.pose));
                out.estimates.push_back(est);
                ++row;
            }

        out.reconstruction = reconstruct_power(out.P_bar, out.Z_bar, grid, out.sampled,
                                               config.estimation.dictionary_size, out.threshold, radio.pattern);
        out.timings.statistical = seconds_since(t0);

        auto &r = out.metrics;
        const auto det = detection_error_rate(Z_sampled, out.Z_bar);
        r.detection_error_rate = det.error_rate;
        r.miss_rate = det.miss_rate;
        r.false_alarm_rate = det.false_alarm_rate;
        r.detection_error_rate_full = detection_error_rate(out.Z, out.reconstruction.sparsity).error_rate;
        r.nmse_p = nmse(out.P, out.reconstruction.power);
        r.empty_support_users = static_cast<int>(out.reconstruction.empty_support_users.size());
        r.nmse_c = r.nmse_c_plain = r.sum_rate = r.sum_rate_rms = r.sum_rate_ergodic = nan;
        out.stages = 1;
        if (options.last_stage < 2)
            return out;

        // Stage II
        t0 = Clock::now();
        SelectionProblem problem;
        problem.power = out.reconstruction.power;
        problem.distances = grid.distances;
        problem.surfaces = B;
        problem.min_distance = config.grid.min_distance;
        problem.transmit_power = p;
        problem.noise_power = out.noise_power;

        PsoConfig pso = config.pso;
        pso.seed = derive_seed(seed, Stream::pso);
        out.pso = pso_optimize(problem, pso);
        out.rms_selection = rms_baseline(problem, config.rms_samples, derive_seed(seed, Stream::rms));
        out.timings.placement = seconds_since(t0);

        r.sum_rate = sum_rate_upper(out.pso.selection, out.P, p, out.noise_power);
        r.sum_rate_rms = sum_rate_upper(out.rms_selection, out.P, p, out.noise_power);
        Rng ergodic_rng = make_rng(seed, Stream::ergodic);
        r.sum_rate_ergodic =
            ergodic_sum_rate_mc(out.pso.selection, sampler, p, out.noise_power, config.ergodic_trials, ergodic_rng)
                .mean;
        r.pso_repaired = out.pso.repaired ? 1 : 0;
        out.stages = 2;
        if (options.last_stage < 3)
            return out;

        // Stage III
        t0 = Clock::now();
        const auto selected = selected_indices(out.pso.selection);
        Rng inst_pilot_rng = make_rng(seed, Stream::pilots_inst);
        Rng inst_channel_rng = make_rng(seed, Stream::channel_inst);
        const CMatrix X3 = generate_pilots(config.estimation.inst_pilot_length, K, inst_pilot_rng);
        const CMatrix H3 = sampler.sample(selected, inst_channel_rng);
        const bool plain_possible = config.estimation.inst_pilot_length >= K;

        const auto Nn = static_cast<Eigen::Index>(N);
        CMatrix H_restricted = CMatrix::Zero(H3.rows(), H3.cols());
        CMatrix H_plain = CMatrix::Zero(H3.rows(), H3.cols());
        bool restricted_ok = true;
        for (std::size_t b = 0; b < selected.size(); ++b)
        {
            const auto m = static_cast<Eigen::Index>(selected[b]);
            const CMatrix H = H3.middleRows(static_cast<Eigen::Index>(b) * Nn, Nn);
            Rng noise_rng = make_rng(seed, Stream::noise_inst, selected[b]);
            const auto block = simulate_uplink_block(X3, H, IndicatorVector::Ones(static_cast<Eigen::Index>(K)),
                                                     sigma2_eff, noise_rng, selected[b]);
            const auto support = build_support(out.reconstruction.sparsity.row(m).transpose(), N);
            if (plain_possible)
                H_plain.middleRows(static_cast<Eigen::Index>(b) * Nn, Nn) = plain_ls(block.Y, X3).channels(N);
            if (support.users.size() > config.estimation.inst_pilot_length)
            {
                // More detected users than pilots: the restricted problem is underdetermined
                restricted_ok = false;
                continue;
            }
            H_restricted.middleRows(static_cast<Eigen::Index>(b) * Nn, Nn) =
                restricted_ls(block.Y, X3, support).channels(N);
        }
        out.timings.instantaneous = seconds_since(t0);

        const bool channel_nonzero = H3.squaredNorm() > 0.0;
        r.nmse_c = channel_nonzero && restricted_ok ? nmse(H3, H_restricted) : nan;
        r.nmse_c_plain = channel_nonzero && plain_possible ? nmse(H3, H_plain) : nan;
        out.H_inst = H3;
        if (restricted_ok)
            out.H_restricted = std::move(H_restricted);
        if (plain_possible)
            out.H_plain = std::move(H_plain);
        out.stages = 3;
        return out;
    }
}
