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

#include "sixdma/channel.hpp"
#include "sixdma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sixdma
{
    Vec3 doa_vector(double theta, double phi)
    {
        const double ct = std::cos(theta);
        return {ct * std::cos(phi), ct * std::sin(phi), std::sin(theta)};
    }

    LocalDirection local_doa(const RotationAngles &u, const Vec3 &f)
    {
        const Mat3 R = rotation_matrix(u);
        LocalDirection d;
        d.vector = -(R.transpose() * f);
        d.theta = std::asin(std::clamp(d.vector.z() / d.vector.norm(), -1.0, 1.0));
        d.phi = std::atan2(d.vector.y(), d.vector.x());
        return d;
    }

    double pattern_gain_dbi(double theta, double phi, const ElementPattern &pattern)
    {
        const double bw = pattern.beamwidth_deg * pi / 180.0;
        const double tv = theta / bw, th = phi / bw;
        const double a_v = -std::min(12.0 * tv * tv, pattern.side_lobe_limit_db);
        const double a_h = -std::min(12.0 * th * th, pattern.max_attenuation_db);
        return pattern.max_gain_dbi - std::min(-(a_v + a_h), pattern.max_attenuation_db);
    }

    double antenna_gain(const Mat3 &R, const Vec3 &f, const ElementPattern &pattern)
    {
        const Vec3 fl = -(R.transpose() * f);
        if (!(fl.x() > 0.0))
            return 0.0;
        const double theta = std::asin(std::clamp(fl.z() / fl.norm(), -1.0, 1.0));
        const double phi = std::atan2(fl.y(), fl.x());
        return std::pow(10.0, pattern_gain_dbi(theta, phi, pattern) / 10.0);
    }

    double antenna_gain(const RotationAngles &u, const Vec3 &f, const ElementPattern &pattern)
    {
        return antenna_gain(rotation_matrix(u), f, pattern);
    }

    CVector steering_vector(const Pose &pose, const Vec3 &f, const std::vector<Vec3> &offsets, double wavelength)
    {
        const auto r = antenna_positions(pose, offsets);
        const double k0 = 2.0 * pi / wavelength;
        CVector a(static_cast<Eigen::Index>(r.size()));
        for (std::size_t n = 0; n < r.size(); ++n)
            a(static_cast<Eigen::Index>(n)) = std::polar(1.0, -k0 * f.dot(r[n]));
        return a;
    }

    CVector synth_channel(const UserSpec &user, const Pose &pose, const std::vector<Vec3> &offsets,
                          const RadioConfig &radio)
    {
        const Mat3 R = rotation_matrix(pose.rotation);
        CVector h = CVector::Zero(static_cast<Eigen::Index>(offsets.size()));
        for (const auto &path : user.paths)
        {
            const Vec3 f = path.doa();
            const double g = antenna_gain(R, f, radio.pattern);
            if (g == 0.0 || path.gain == 0.0)
                continue;
            const cplx c = std::polar(std::sqrt(path.gain * g), -path.phase);
            h += c * steering_vector(pose, f, offsets, radio.wavelength);
        }
        return h;
    }

    CMatrix channel_matrix(const std::vector<UserSpec> &users, const CandidateGrid &grid, const RadioConfig &radio)
    {
        const auto M = static_cast<Eigen::Index>(grid.size());
        const auto N = static_cast<Eigen::Index>(grid.antennas());
        const auto K = static_cast<Eigen::Index>(users.size());
        CMatrix H(M * N, K);
        for (Eigen::Index m = 0; m < M; ++m)
            for (Eigen::Index k = 0; k < K; ++k)
                H.block(m * N, k, N, 1) = synth_channel(users[k], grid.poses[m], grid.local_offsets, radio);
        return H;
    }

    RMatrix true_power_matrix(const std::vector<UserSpec> &users, const CandidateGrid &grid, const RadioConfig &radio)
    {
        const auto M = static_cast<Eigen::Index>(grid.size());
        const auto K = static_cast<Eigen::Index>(users.size());
        const double N = static_cast<double>(grid.antennas());
        RMatrix P(M, K);
        for (Eigen::Index m = 0; m < M; ++m)
        {
            const Mat3 R = rotation_matrix(grid.poses[m].rotation);
            for (Eigen::Index k = 0; k < K; ++k)
                P(m, k) = N * antenna_gain(R, users[k].cluster_doa, radio.pattern) * users[k].multipath_power;
        }
        return P;
    }

    RVector relative_threshold(const RMatrix &power, double ratio)
    {
        if (!(ratio > 0.0))
            throw std::invalid_argument("relative_threshold: ratio must be positive");
        RVector eps(power.cols());
        for (Eigen::Index k = 0; k < power.cols(); ++k)
            eps(k) = power.rows() > 0 ? ratio * power.col(k).maxCoeff() : 0.0;
        return eps;
    }

    IndicatorMatrix threshold_power(const RMatrix &power, const RVector &eps)
    {
        if (eps.size() != power.cols())
            throw ShapeMismatch("threshold_power: expected " + std::to_string(power.cols()) + " thresholds, got " +
                                std::to_string(eps.size()));
        IndicatorMatrix Z(power.rows(), power.cols());
        for (Eigen::Index k = 0; k < power.cols(); ++k)
            for (Eigen::Index m = 0; m < power.rows(); ++m)
                Z(m, k) = power(m, k) > eps(k) ? 1 : 0;
        return Z;
    }

    ChannelSampler::ChannelSampler(const std::vector<UserSpec> &users, const CandidateGrid &grid,
                                   IndicatorMatrix sparsity, const RadioConfig &radio, FadingModel model)
        : M_(grid.size()), N_(grid.antennas()), K_(users.size()), model_(model), Z_(std::move(sparsity))
    {
        if (Z_.rows() != static_cast<Eigen::Index>(M_) || Z_.cols() != static_cast<Eigen::Index>(K_))
            throw ShapeMismatch("ChannelSampler: sparsity matrix must be " + std::to_string(M_) + " x " +
                                std::to_string(K_));

        path_amplitudes_.resize(K_);
        for (std::size_t k = 0; k < K_; ++k)
        {
            if (users[k].paths.empty())
                throw std::invalid_argument("ChannelSampler: user " + std::to_string(k) + " has no paths");
            for (const auto &p : users[k].paths)
                path_amplitudes_[k].push_back(std::sqrt(p.gain));
        }

        const auto N = static_cast<Eigen::Index>(N_);
        if (model_ == FadingModel::cluster)
        {
            cluster_response_ = CMatrix::Zero(N, static_cast<Eigen::Index>(M_ * K_));
            for (std::size_t m = 0; m < M_; ++m)
            {
                const Mat3 R = rotation_matrix(grid.poses[m].rotation);
                for (std::size_t k = 0; k < K_; ++k)
                {
                    const double g = antenna_gain(R, users[k].cluster_doa, radio.pattern);
                    cluster_response_.col(static_cast<Eigen::Index>(m * K_ + k)) =
                        std::sqrt(g) * steering_vector(grid.poses[m], users[k].cluster_doa, grid.local_offsets,
                                                       radio.wavelength);
                }
            }
        }
        else
        {
            path_response_.resize(M_ * K_);
            for (std::size_t m = 0; m < M_; ++m)
            {
                const Mat3 R = rotation_matrix(grid.poses[m].rotation);
                for (std::size_t k = 0; k < K_; ++k)
                {
                    const auto &paths = users[k].paths;
                    CMatrix A(N, static_cast<Eigen::Index>(paths.size()));
                    for (std::size_t i = 0; i < paths.size(); ++i)
                    {
                        const Vec3 f = paths[i].doa();
                        const double g = antenna_gain(R, f, radio.pattern);
                        A.col(static_cast<Eigen::Index>(i)) =
                            std::sqrt(paths[i].gain * g) *
                            steering_vector(grid.poses[m], f, grid.local_offsets, radio.wavelength);
                    }
                    path_response_[m * K_ + k] = std::move(A);
                }
            }
        }
    }

    CMatrix ChannelSampler::sample_pose(std::size_t m, Rng &rng) const
    {
        if (m >= M_)
            throw std::out_of_range("ChannelSampler::sample_pose: pose index " + std::to_string(m) + " out of range");

        const auto N = static_cast<Eigen::Index>(N_);
        CMatrix H = CMatrix::Zero(N, static_cast<Eigen::Index>(K_));
        for (std::size_t k = 0; k < K_; ++k)
        {
            // Phases are drawn for masked users too, so that the random stream does not depend on Z
            const auto &amp = path_amplitudes_[k];
            if (model_ == FadingModel::cluster)
            {
                CVector fading = CVector::Zero(N);
                for (Eigen::Index n = 0; n < N; ++n)
                    for (double a : amp)
                        fading(n) += std::polar(a, -uniform_phase(rng));
                if (Z_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)))
                    H.col(static_cast<Eigen::Index>(k)) =
                        cluster_response_.col(static_cast<Eigen::Index>(m * K_ + k)).cwiseProduct(fading);
            }
            else
            {
                CVector phases(static_cast<Eigen::Index>(amp.size()));
                for (auto &c : phases)
                    c = std::polar(1.0, -uniform_phase(rng));
                if (Z_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)))
                    H.col(static_cast<Eigen::Index>(k)) = path_response_[m * K_ + k] * phases;
            }
        }
        return H;
    }

    CMatrix ChannelSampler::sample(const std::vector<std::size_t> &poses, Rng &rng) const
    {
        const auto N = static_cast<Eigen::Index>(N_);
        CMatrix H = CMatrix::Zero(static_cast<Eigen::Index>(poses.size()) * N, static_cast<Eigen::Index>(K_));
        if (model_ == FadingModel::cluster)
        {
            for (std::size_t i = 0; i < poses.size(); ++i)
                H.middleRows(static_cast<Eigen::Index>(i) * N, N) = sample_pose(poses[i], rng);
            return H;
        }

        // One set of path phases seen by every pose of the realization
        for (std::size_t k = 0; k < K_; ++k)
        {
            CVector phases(static_cast<Eigen::Index>(path_amplitudes_[k].size()));
            for (auto &c : phases)
                c = std::polar(1.0, -uniform_phase(rng));
            for (std::size_t i = 0; i < poses.size(); ++i)
            {
                const std::size_t m = poses[i];
                if (m >= M_)
                    throw std::out_of_range("ChannelSampler::sample: pose index " + std::to_string(m) +
                                            " out of range");
                if (Z_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)))
                    H.block(static_cast<Eigen::Index>(i) * N, static_cast<Eigen::Index>(k), N, 1) =
                        path_response_[m * K_ + k] * phases;
            }
        }
        return H;
    }
}
