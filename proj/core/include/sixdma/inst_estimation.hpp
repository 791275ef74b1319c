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

#ifndef SIXDMA_INST_ESTIMATION_HPP
#define SIXDMA_INST_ESTIMATION_HPP

#include "sixdma/types.hpp"

#include <cstddef>
#include <vector>

namespace sixdma
{
    // Nonzero entries of the user-major channel vector h, h[k N + n] = H[n, k]
    struct SupportSet
    {
        std::vector<std::size_t> indices; // Sorted entries of h, N per supported user
        std::vector<std::size_t> users;   // Supported users, sorted
        std::size_t antennas = 0;         // N
        std::size_t total_users = 0;      // K
    };

    // Support of z^T kron 1_N
    SupportSet build_support(const IndicatorVector &z, std::size_t N);

    struct InstEstimate
    {
        CVector h;                      // N K entries, user-major, zero outside the support
        std::vector<std::size_t> users; // Supported users
        double residual = 0.0;          // Frobenius norm of Y - X H^T

        // Estimate reshaped to N x K
        CMatrix channels(std::size_t N) const;
    };

    // Per-antenna least squares Y[:, n] = X_S h_n over the supported pilot columns, solved by QR
    // - throws RankDeficient if |S| > L or cond(X_S) > max_condition
    InstEstimate restricted_ls(const CMatrix &Y, const CMatrix &X, const SupportSet &support,
                               double max_condition = 1e12);

    // Restricted LS with every user supported
    InstEstimate plain_ls(const CMatrix &Y, const CMatrix &X, double max_condition = 1e12);

    // Stack a N x K channel block into the user-major vector
    CVector user_major(const CMatrix &H);
}

#endif
