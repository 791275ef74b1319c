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

#ifndef SIXDMA_GEOMETRY_HPP
#define SIXDMA_GEOMETRY_HPP

#include "sixdma/types.hpp"

#include <cstddef>
#include <vector>

namespace sixdma
{
    // Euler angles of a surface, radians, canonical range [-pi, pi)
    struct RotationAngles
    {
        double alpha = 0.0; // Rotation about the x-axis
        double beta = 0.0;  // Rotation about the y-axis
        double gamma = 0.0; // Rotation about the z-axis
    };

    // Position-rotation pair of one surface
    struct Pose
    {
        Vec3 position = Vec3::Zero(); // Surface center q in meters, relative to the CPU
        RotationAngles rotation;      // Orientation u
    };

    // Discrete set of candidate poses shared by all surfaces
    struct CandidateGrid
    {
        std::vector<Pose> poses;         // M candidate poses
        std::vector<Vec3> local_offsets; // N antenna offsets in the surface-local frame, meters
        RMatrix distances;               // M x M pairwise distances of the pose positions

        std::size_t size() const { return poses.size(); }
        std::size_t antennas() const { return local_offsets.size(); }
    };

    // Rotation matrix mapping local surface coordinates to global coordinates
    Mat3 rotation_matrix(const RotationAngles &u);

    // Recover angles from a proper rotation matrix; at gimbal lock (|beta| = pi/2) gamma is set to 0
    RotationAngles rotation_angles(const Mat3 &R);

    // Outward normal n(u), i.e. the local x-axis expressed in global coordinates
    Vec3 surface_normal(const RotationAngles &u);

    // Global antenna positions r_n = q + R(u) * r_n_local
    std::vector<Vec3> antenna_positions(const Pose &pose, const std::vector<Vec3> &offsets);

    // sqrt(N) x sqrt(N) grid in the local y-z plane, centered at the origin
    // - N must be a perfect square
    std::vector<Vec3> planar_offsets(std::size_t N, double spacing);

    // n approximately evenly spread unit vectors (golden-spiral lattice)
    std::vector<Vec3> fibonacci_sphere(std::size_t n);

    // Pose at the given position whose local x-axis points radially outwards
    // - local y follows the azimuth basis vector, local z the negative polar-angle basis vector
    Pose radial_pose(const Vec3 &position);

    RMatrix distance_matrix(const std::vector<Pose> &poses);

    // M radially oriented poses evenly spread on a sphere centered at the CPU
    CandidateGrid candidate_sphere_grid(std::size_t M, double radius, std::vector<Vec3> offsets);

    enum class Constraint
    {
        reflection,  // n(u_b)^T (q_j - q_b) <= 0, surfaces do not face each other
        cpu_facing,  // n(u_b)^T q_b >= 0, surfaces do not face the CPU
        min_distance // |q_b - q_j| >= d_min
    };

    struct ConstraintViolation
    {
        Constraint constraint;
        std::size_t first;  // Pose b
        std::size_t second; // Pose j, equal to first for cpu_facing
        double value;       // Offending left-hand side
    };

    // All violated placement constraints among the given poses
    // - tol absorbs rounding in the half-space tests
    std::vector<ConstraintViolation> check_constraints(const std::vector<Pose> &poses, double d_min,
                                                       double tol = 1e-9);
}

#endif
