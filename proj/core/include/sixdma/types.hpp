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

#ifndef SIXDMA_TYPES_HPP
#define SIXDMA_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace sixdma
{
    using cplx = std::complex<double>;

    using Vec3 = Eigen::Vector3d;
    using Mat3 = Eigen::Matrix3d;

    using RVector = Eigen::VectorXd;
    using RMatrix = Eigen::MatrixXd;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    // Binary indicator matrices (0 / 1), e.g. the directional sparsity matrix Z
    using IndicatorMatrix = Eigen::MatrixXi;
    using IndicatorVector = Eigen::VectorXi;

    inline constexpr double pi = 3.14159265358979323846;
}

#endif
