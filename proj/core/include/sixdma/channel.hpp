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

#ifndef SIXDMA_CHANNEL_HPP
#define SIXDMA_CHANNEL_HPP

#include "sixdma/geometry.hpp"
#include "sixdma/random.hpp"
#include "sixdma/types.hpp"

#include <cstddef>
#include <vector>

namespace sixdma
{
    // Directive element pattern, restricted to the front half-space of the surface
    // A = Gmax - min(-(A_V + A_H), A_max), A_V = -min(12 (theta/bw)^2, SLA_V), A_H = -min(12 (phi/bw)^2, A_max)
    struct ElementPattern
    {
        double max_gain_dbi = 8.0;        // Gmax
        double beamwidth_deg = 65.0;      // 3 dB beamwidth in both planes
        double side_lobe_limit_db = 30.0; // SLA_V
        double max_attenuation_db = 30.0; // A_max
    };

    // Radio parameters shared by all surfaces
    struct RadioConfig
    {
        double wavelength = 0.125; // Carrier wavelength in meters
        ElementPattern pattern;
    };

    // Incoming direction expressed in the surface-local frame
    struct LocalDirection
    {
        double theta = 0.0; // Local elevation in [-pi/2, pi/2]
        double phi = 0.0;   // Local azimuth in [-pi, pi]
        Vec3 vector = Vec3::UnitX();
    };

    // Unit propagation vector for elevation theta and azimuth phi
    Vec3 doa_vector(double theta, double phi);

    // Local direction of f, i.e. the spherical angles of -R(u)^T f
    LocalDirection local_doa(const RotationAngles &u, const Vec3 &f);

    // Pattern value in dBi for local angles; does not apply the half-space cut
    double pattern_gain_dbi(double theta, double phi, const ElementPattern &pattern = {});

    // Linear gain; exactly 0 when the local direction has a non-positive x component
    double antenna_gain(const RotationAngles &u, const Vec3 &f, const ElementPattern &pattern = {});
    double antenna_gain(const Mat3 &R, const Vec3 &f, const ElementPattern &pattern = {});

    // exp(-j 2 pi / lambda f^T r_n) for every antenna of the surface
    CVector steering_vector(const Pose &pose, const Vec3 &f, const std::vector<Vec3> &offsets, double wavelength);

    // One scattered path of a user
    struct PathComponent
    {
        double gain = 0.0;    // mu, linear power
        double phase = 0.0;   // Radians in [0, 2 pi)
        double theta = 0.0;   // Elevation of the propagation direction
        double azimuth = 0.0; // Azimuth of the propagation direction

        Vec3 doa() const { return doa_vector(theta, azimuth); }
    };

    struct UserSpec
    {
        Vec3 location = Vec3::Zero();      // Meters, relative to the CPU
        std::vector<PathComponent> paths;  // Gamma_k scattered paths
        Vec3 cluster_doa = -Vec3::UnitX(); // f_k, propagation direction from the cluster center
        double multipath_power = 0.0;      // t_k = sum of path gains
        int hotspot = -1;                  // Hotspot index, -1 for regular users
    };

    // Sum over paths of exp(-j phi) sqrt(mu g) a, using the stored path phases
    CVector synth_channel(const UserSpec &user, const Pose &pose, const std::vector<Vec3> &offsets,
                          const RadioConfig &radio = {});

    // Stacked (M N) x K channel of all users to all poses of the grid, using the stored path phases
    CMatrix channel_matrix(const std::vector<UserSpec> &users, const CandidateGrid &grid, const RadioConfig &radio = {});

    // Analytic average power P[m,k] = N g_k(u_m, f_k) t_k
    RMatrix true_power_matrix(const std::vector<UserSpec> &users, const CandidateGrid &grid,
                              const RadioConfig &radio = {});

    // Per-user threshold ratio * max_m P[m,k]
    RVector relative_threshold(const RMatrix &power, double ratio);

    // Z[m,k] = P[m,k] > eps[k]
    IndicatorMatrix threshold_power(const RMatrix &power, const RVector &eps);

    // Random small-scale fading used to draw channel realizations
    enum class FadingModel
    {
        cluster,  // Cluster gain and steering, independent path phases per antenna: E|h_n|^2 = P/N exactly
        geometric // Exact per-path gains and steering vectors with fresh path phases
    };

    // Draws channel realizations of all users; blocks with Z[m,k] = 0 are exactly zero
    class ChannelSampler
    {
    public:
        ChannelSampler(const std::vector<UserSpec> &users, const CandidateGrid &grid, IndicatorMatrix sparsity,
                       const RadioConfig &radio = {}, FadingModel model = FadingModel::cluster);

        // N x K channel H_m of pose m, column k is the channel of user k
        CMatrix sample_pose(std::size_t m, Rng &rng) const;

        // (|poses| N) x K stacked channel of the listed poses, drawn jointly
        CMatrix sample(const std::vector<std::size_t> &poses, Rng &rng) const;

        std::size_t poses() const { return M_; }
        std::size_t antennas() const { return N_; }
        std::size_t users() const { return K_; }
        const IndicatorMatrix &sparsity() const { return Z_; }

    private:
        std::size_t M_, N_, K_;
        FadingModel model_;
        IndicatorMatrix Z_;
        std::vector<std::vector<double>> path_amplitudes_; // sqrt(mu) per user, per path

        // Cluster model: sqrt(g_k) a(f_k) per (m, k), column m * K + k
        CMatrix cluster_response_;

        // Geometric model: sqrt(mu g) a per path, indexed [m * K + k], N x Gamma_k
        std::vector<CMatrix> path_response_;
    };
}

#endif
