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

#ifndef SIXDMA_RECONSTRUCTION_HPP
#define SIXDMA_RECONSTRUCTION_HPP

#include "sixdma/channel.hpp"
#include "sixdma/geometry.hpp"

#include <cstddef>
#include <vector>

namespace sixdma
{
    struct PowerReconstruction
    {
        RMatrix power;                               // P_hat, M x K
        IndicatorMatrix sparsity;                    // Z_hat = P_hat > eps
        std::vector<Vec3> directions;                // Recovered cluster direction per user
        std::vector<std::size_t> direction_index;    // Winning dictionary column per user
        RVector multipath_power;                     // Recovered t_k per user
        std::vector<std::size_t> empty_support_users; // Users without any detected sampled pose
    };

    // Fit every user's sampled powers with a single dictionary direction and extend to the full grid
    // - P_bar, Z_bar: one row per sampled pose, in the order of `sampled`
    // - dictionary: candidate cluster directions (unit vectors)
    // - eps: per-user threshold (size K) or one entry for all users
    // Column g of the per-user dictionary holds N g(u_m, f_g) over the supported sampled poses; the best
    // column minimizes the non-negative least-squares residual, ties go to the lowest index.
    PowerReconstruction reconstruct_power(const RMatrix &P_bar, const IndicatorMatrix &Z_bar, const CandidateGrid &grid,
                                          const std::vector<std::size_t> &sampled, const std::vector<Vec3> &dictionary,
                                          const RVector &eps, const ElementPattern &pattern = {});

    // Same with a golden-spiral dictionary of G directions
    PowerReconstruction reconstruct_power(const RMatrix &P_bar, const IndicatorMatrix &Z_bar, const CandidateGrid &grid,
                                          const std::vector<std::size_t> &sampled, std::size_t G, const RVector &eps,
                                          const ElementPattern &pattern = {});
}

#endif
