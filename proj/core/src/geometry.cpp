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

#include "sixdma/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sixdma
{
    namespace
    {
        double wrap_angle(double a)
        {
            // [-pi, pi)
            double w = std::fmod(a + pi, 2.0 * pi);
            if (w < 0.0)
                w += 2.0 * pi;
            return w - pi;
        }
    }

    Mat3 rotation_matrix(const RotationAngles &u)
    {
        const double ca = std::cos(u.alpha), sa = std::sin(u.alpha);
        const double cb = std::cos(u.beta), sb = std::sin(u.beta);
        const double cg = std::cos(u.gamma), sg = std::sin(u.gamma);

        Mat3 R;
        R << cb * cg, cb * sg, -sb,
            sb * sa * cg - ca * sg, sb * sa * sg + ca * cg, cb * sa,
            ca * sb * cg + sa * sg, ca * sb * sg - sa * cg, ca * cb;
        return R;
    }

    RotationAngles rotation_angles(const Mat3 &R)
    {
        RotationAngles u;
        const double sb = std::clamp(-R(0, 2), -1.0, 1.0);
        u.beta = std::asin(sb);
        if (std::abs(sb) < 1.0 - 1e-12)
        {
            u.gamma = std::atan2(R(0, 1), R(0, 0));
            u.alpha = std::atan2(R(1, 2), R(2, 2));
        }
        else
        {
            u.gamma = 0.0;
            u.alpha = std::atan2(-R(2, 1), R(1, 1));
        }
        u.alpha = wrap_angle(u.alpha);
        u.gamma = wrap_angle(u.gamma);
        return u;
    }

    Vec3 surface_normal(const RotationAngles &u)
    {
        return rotation_matrix(u).col(0);
    }

    std::vector<Vec3> antenna_positions(const Pose &pose, const std::vector<Vec3> &offsets)
    {
        const Mat3 R = rotation_matrix(pose.rotation);
        std::vector<Vec3> out;
        out.reserve(offsets.size());
        for (const auto &r : offsets)
            out.push_back(pose.position + R * r);
        return out;
    }

    std::vector<Vec3> planar_offsets(std::size_t N, double spacing)
    {
        const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(N))));
        if (N == 0 || side * side != N)
            throw std::invalid_argument("planar_offsets: N must be a positive perfect square, got " + std::to_string(N));
        if (!(spacing > 0.0))
            throw std::invalid_argument("planar_offsets: spacing must be positive");

        const double center = 0.5 * static_cast<double>(side - 1);
        std::vector<Vec3> out;
        out.reserve(N);
        for (std::size_t iz = 0; iz < side; ++iz)
            for (std::size_t iy = 0; iy < side; ++iy)
                out.emplace_back(0.0, (static_cast<double>(iy) - center) * spacing,
                                 (static_cast<double>(iz) - center) * spacing);
        return out;
    }

    std::vector<Vec3> fibonacci_sphere(std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("fibonacci_sphere: n must be positive");

        const double golden_angle = pi * (3.0 - std::sqrt(5.0));
        const double dn = static_cast<double>(n);
        std::vector<Vec3> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / dn;
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden_angle * static_cast<double>(i);
            out.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
        }
        return out;
    }

    Pose radial_pose(const Vec3 &position)
    {
        const double r = position.norm();
        if (!(r > 0.0))
            throw std::invalid_argument("radial_pose: position must not coincide with the CPU");

        const Vec3 a_r = position / r;
        const double rho = std::hypot(a_r.x(), a_r.y());
        const double phi = rho > 1e-12 ? std::atan2(a_r.y(), a_r.x()) : 0.0;
        const double theta = std::atan2(rho, a_r.z()); // polar angle

        const Vec3 a_phi(-std::sin(phi), std::cos(phi), 0.0);
        const Vec3 a_theta(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta));

        Mat3 R;
        R.col(0) = a_r;
        R.col(1) = a_phi;
        R.col(2) = -a_theta;

        Pose pose;
        pose.position = position;
        pose.rotation = rotation_angles(R);
        return pose;
    }

    RMatrix distance_matrix(const std::vector<Pose> &poses)
    {
        const auto M = static_cast<Eigen::Index>(poses.size());
        RMatrix D = RMatrix::Zero(M, M);
        for (Eigen::Index i = 0; i < M; ++i)
            for (Eigen::Index j = i + 1; j < M; ++j)
            {
                const double d = (poses[i].position - poses[j].position).norm();
                D(i, j) = d;
                D(j, i) = d;
            }
        return D;
    }

    CandidateGrid candidate_sphere_grid(std::size_t M, double radius, std::vector<Vec3> offsets)
    {
        if (M == 0)
            throw std::invalid_argument("candidate_sphere_grid: M must be positive");
        if (!(radius > 0.0))
            throw std::invalid_argument("candidate_sphere_grid: radius must be positive");

        CandidateGrid grid;
        grid.poses.reserve(M);
        for (const auto &dir : fibonacci_sphere(M))
            grid.poses.push_back(radial_pose(radius * dir));
        grid.local_offsets = std::move(offsets);
        grid.distances = distance_matrix(grid.poses);
        return grid;
    }

    std::vector<ConstraintViolation> check_constraints(const std::vector<Pose> &poses, double d_min, double tol)
    {
        std::vector<ConstraintViolation> out;
        std::vector<Vec3> normals;
        normals.reserve(poses.size());
        for (const auto &p : poses)
            normals.push_back(surface_normal(p.rotation));

        for (std::size_t b = 0; b < poses.size(); ++b)
        {
            const Vec3 &qb = poses[b].position;
            const double facing = normals[b].dot(qb);
            if (facing < -tol)
                out.push_back({Constraint::cpu_facing, b, b, facing});

            for (std::size_t j = 0; j < poses.size(); ++j)
            {
                if (j == b)
                    continue;
                const Vec3 &qj = poses[j].position;
                const double refl = normals[b].dot(qj - qb);
                if (refl > tol)
                    out.push_back({Constraint::reflection, b, j, refl});
                if (j > b)
                {
                    const double d = (qb - qj).norm();
                    if (d < d_min)
                        out.push_back({Constraint::min_distance, b, j, d});
                }
            }
        }
        return out;
    }
}
