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

#include "sixdma/stat_estimation.hpp"
#include "sixdma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sixdma
{
    CMatrix generate_pilots(std::size_t L, std::size_t K, Rng &rng)
    {
        if (L == 0 || K == 0)
            throw std::invalid_argument("generate_pilots: L and K must be positive");
        CMatrix X(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(K));
        for (Eigen::Index k = 0; k < X.cols(); ++k)
            for (Eigen::Index l = 0; l < X.rows(); ++l)
                X(l, k) = complex_normal(rng);
        return X;
    }

    CMatrix generate_pilots(std::size_t L, std::size_t K, std::uint64_t seed)
    {
        Rng rng = make_rng(seed);
        return generate_pilots(L, K, rng);
    }

    ReceivedBlock simulate_uplink_block(const CMatrix &X, const CMatrix &H, const IndicatorVector &z, double sigma2,
                                        Rng &rng, std::size_t pose)
    {
        if (H.cols() != X.cols() || z.size() != X.cols())
            throw ShapeMismatch("simulate_uplink_block: X is " + std::to_string(X.rows()) + " x " +
                                std::to_string(X.cols()) + ", H has " + std::to_string(H.cols()) +
                                " users, z has " + std::to_string(z.size()) + " entries");
        if (!(sigma2 >= 0.0))
            throw std::invalid_argument("simulate_uplink_block: sigma2 must be non-negative");

        ReceivedBlock out;
        out.pose = pose;
        out.Y = X * z.cast<cplx>().asDiagonal() * H.transpose();
        if (sigma2 > 0.0)
            for (Eigen::Index n = 0; n < out.Y.cols(); ++n)
                for (Eigen::Index l = 0; l < out.Y.rows(); ++l)
                    out.Y(l, n) += complex_normal(rng, sigma2);
        return out;
    }

    ReceivedBlock simulate_uplink_block(const CMatrix &X, const CMatrix &H, const IndicatorVector &z, double sigma2,
                                        std::uint64_t seed, std::size_t pose)
    {
        Rng rng = make_rng(seed);
        return simulate_uplink_block(X, H, z, sigma2, rng, pose);
    }

    CMatrix sample_covariance(const CMatrix &Y)
    {
        if (Y.cols() == 0)
            throw std::invalid_argument("sample_covariance: Y needs at least one column");
        return (Y * Y.adjoint()) / static_cast<double>(Y.cols());
    }

    double nll(const RVector &eta, const CMatrix &X, const CMatrix &sample_cov, double sigma2)
    {
        if (eta.size() != X.cols() || sample_cov.rows() != X.rows() || sample_cov.cols() != X.rows())
            throw ShapeMismatch("nll: operand shapes do not conform");

        const auto L = X.rows();
        CMatrix S = X * eta.cast<cplx>().asDiagonal() * X.adjoint();
        S.diagonal().array() += sigma2;

        Eigen::LLT<CMatrix> llt(S);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("nll: covariance is not positive definite");

        const CMatrix L_factor = llt.matrixL();
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < L; ++i)
            logdet += 2.0 * std::log(L_factor(i, i).real());
        const double trace = llt.solve(sample_cov).trace().real();
        return logdet + trace;
    }

    MlState MlState::initial(std::size_t K, const CMatrix &sample_cov, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("MlState::initial: sigma2 must be positive");
        const auto L = sample_cov.rows();
        MlState s;
        s.eta = RVector::Zero(static_cast<Eigen::Index>(K));
        s.sigma_inv = CMatrix::Identity(L, L) / sigma2;
        s.nll = static_cast<double>(L) * std::log(sigma2) + sample_cov.trace().real() / sigma2;
        return s;
    }

    namespace
    {
        // Shares the products needed by both the step and the rank-one update
        CoordinateStep step_from(const MlState &state, std::size_t k, const CVector &u, const CMatrix &sample_cov,
                                 const CVector &x_k)
        {
            CoordinateStep st;
            st.a = x_k.dot(u).real();
            st.b = u.dot(sample_cov * u).real();
            st.nu_star = (st.b - st.a) / (st.a * st.a);
            st.nu = std::max(st.nu_star, -state.eta(static_cast<Eigen::Index>(k)));
            return st;
        }

        void check_coordinate(const MlState &state, std::size_t k, const CVector &x_k, const CMatrix &sample_cov)
        {
            if (k >= static_cast<std::size_t>(state.eta.size()))
                throw std::out_of_range("coordinate_update: user index " + std::to_string(k) + " out of range");
            if (x_k.size() != state.sigma_inv.rows() || sample_cov.rows() != state.sigma_inv.rows())
                throw ShapeMismatch("coordinate_update: pilot length does not match the state");
        }
    }

    CoordinateStep optimal_step(const MlState &state, std::size_t k, const CVector &x_k, const CMatrix &sample_cov)
    {
        check_coordinate(state, k, x_k, sample_cov);
        const CVector u = state.sigma_inv * x_k;
        return step_from(state, k, u, sample_cov, x_k);
    }

    CoordinateStep coordinate_update(MlState &state, std::size_t k, const CVector &x_k, const CMatrix &sample_cov)
    {
        check_coordinate(state, k, x_k, sample_cov);
        const CVector u = state.sigma_inv * x_k;
        const CoordinateStep st = step_from(state, k, u, sample_cov, x_k);
        if (st.nu == 0.0)
            return st;

        const double denom = 1.0 + st.nu * st.a;
        state.eta(static_cast<Eigen::Index>(k)) = std::max(0.0, state.eta(static_cast<Eigen::Index>(k)) + st.nu);
        state.sigma_inv.noalias() -= (st.nu / denom) * (u * u.adjoint());
        state.nll += std::log(denom) - st.b * st.nu / denom;
        return st;
    }

    void validate(const JdcConfig &config, std::size_t K)
    {
        if (config.iterations == 0)
            throw std::invalid_argument("jdc: iterations must be at least 1");
        if (!(config.noise_power > 0.0))
            throw std::invalid_argument("jdc: noise_power must be positive");
        if (config.threshold.size() != 1 && config.threshold.size() != static_cast<Eigen::Index>(K))
            throw ShapeMismatch("jdc: threshold must have 1 or " + std::to_string(K) + " entries");
        if (!(config.threshold.array() > 0.0).all())
            throw std::invalid_argument("jdc: threshold must be positive");
    }

    std::vector<GroupAssignment> partition_groups(const std::vector<std::size_t> &poses, std::size_t B)
    {
        if (B == 0 || poses.empty() || poses.size() % B != 0)
            throw std::invalid_argument("partition_groups: " + std::to_string(poses.size()) +
                                        " poses cannot be split into " + std::to_string(B) + " equal groups");
        const std::size_t size = poses.size() / B;
        std::vector<GroupAssignment> groups(B);
        for (std::size_t b = 0; b < B; ++b)
        {
            groups[b].index = b;
            groups[b].poses.assign(poses.begin() + static_cast<std::ptrdiff_t>(b * size),
                                   poses.begin() + static_cast<std::ptrdiff_t>((b + 1) * size));
        }
        return groups;
    }

    PoseEstimate jdc_estimate_pose(const CMatrix &X, const ReceivedBlock &block, const JdcConfig &config)
    {
        const auto K = static_cast<std::size_t>(X.cols());
        validate(config, K);
        if (block.Y.rows() != X.rows())
            throw ShapeMismatch("jdc_estimate: block of pose " + std::to_string(block.pose) + " has " +
                                std::to_string(block.Y.rows()) + " rows, expected " + std::to_string(X.rows()));

        const CMatrix S = sample_covariance(block.Y);
        MlState state = MlState::initial(K, S, config.noise_power);

        Rng rng = make_rng(config.schedule_seed, Stream::schedule, block.pose);
        std::uniform_int_distribution<std::size_t> pick(0, K - 1);
        std::vector<CVector> columns(K);
        for (std::size_t k = 0; k < K; ++k)
            columns[k] = X.col(static_cast<Eigen::Index>(k));

        const std::size_t steps = config.iterations * K;
        for (std::size_t i = 0; i < steps; ++i)
        {
            const std::size_t k = pick(rng);
            coordinate_update(state, k, columns[k], S);
        }

        PoseEstimate out;
        out.pose = block.pose;
        out.power = static_cast<double>(block.Y.cols()) * state.eta;
        out.indicator.resize(static_cast<Eigen::Index>(K));
        for (Eigen::Index k = 0; k < out.power.size(); ++k)
        {
            const double eps = config.threshold.size() == 1 ? config.threshold(0) : config.threshold(k);
            out.indicator(k) = out.power(k) > eps ? 1 : 0;
        }
        out.nll = state.nll;
        out.updates = steps;
        return out;
    }

    std::vector<PoseEstimate> jdc_estimate(const GroupAssignment &group, const CMatrix &X,
                                           const std::vector<ReceivedBlock> &blocks, const JdcConfig &config)
    {
        if (blocks.size() != group.poses.size())
            throw ShapeMismatch("jdc_estimate: group " + std::to_string(group.index) + " has " +
                                std::to_string(group.poses.size()) + " poses but " + std::to_string(blocks.size()) +
                                " blocks");
        std::vector<PoseEstimate> out;
        out.reserve(blocks.size());
        for (std::size_t i = 0; i < blocks.size(); ++i)
        {
            if (blocks[i].pose != group.poses[i])
                throw std::invalid_argument("jdc_estimate: block order does not match the group members");
            out.push_back(jdc_estimate_pose(X, blocks[i], config));
        }
        return out;
    }
}
