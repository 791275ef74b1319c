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

#include "sixdma/inst_estimation.hpp"
#include "sixdma/errors.hpp"

#include <string>

namespace sixdma
{
    SupportSet build_support(const IndicatorVector &z, std::size_t N)
    {
        SupportSet s;
        s.antennas = N;
        s.total_users = static_cast<std::size_t>(z.size());
        for (Eigen::Index k = 0; k < z.size(); ++k)
        {
            if (!z(k))
                continue;
            s.users.push_back(static_cast<std::size_t>(k));
            for (std::size_t n = 0; n < N; ++n)
                s.indices.push_back(static_cast<std::size_t>(k) * N + n);
        }
        return s;
    }

    CMatrix InstEstimate::channels(std::size_t N) const
    {
        const auto n = static_cast<Eigen::Index>(N);
        if (n == 0 || h.size() % n != 0)
            throw ShapeMismatch("InstEstimate::channels: length " + std::to_string(h.size()) +
                                " is not a multiple of N = " + std::to_string(N));
        return Eigen::Map<const CMatrix>(h.data(), n, h.size() / n);
    }

    CVector user_major(const CMatrix &H)
    {
        return Eigen::Map<const CVector>(H.data(), H.size());
    }

    InstEstimate restricted_ls(const CMatrix &Y, const CMatrix &X, const SupportSet &support, double max_condition)
    {
        const auto L = X.rows();
        const auto K = X.cols();
        const auto N = Y.cols();
        if (Y.rows() != L)
            throw ShapeMismatch("restricted_ls: Y has " + std::to_string(Y.rows()) + " rows, X has " +
                                std::to_string(L));
        if (support.total_users != static_cast<std::size_t>(K) || support.antennas != static_cast<std::size_t>(N))
            throw ShapeMismatch("restricted_ls: support was built for K = " + std::to_string(support.total_users) +
                                ", N = " + std::to_string(support.antennas));

        const auto S = static_cast<Eigen::Index>(support.users.size());
        InstEstimate out;
        out.users = support.users;
        out.h = CVector::Zero(K * N);
        if (S == 0)
        {
            out.residual = Y.norm();
            return out;
        }
        if (S > L)
            throw RankDeficient("restricted_ls: " + std::to_string(S) + " supported users exceed pilot length " +
                                std::to_string(L));

        CMatrix Xs(L, S);
        for (Eigen::Index j = 0; j < S; ++j)
            Xs.col(j) = X.col(static_cast<Eigen::Index>(support.users[static_cast<std::size_t>(j)]));

        const Eigen::JacobiSVD<CMatrix> svd(Xs);
        const auto &sv = svd.singularValues();
        if (!(sv(S - 1) > 0.0) || sv(0) / sv(S - 1) > max_condition)
            throw RankDeficient("restricted_ls: pilot submatrix is numerically singular");

        // All antennas share the factorization
        const Eigen::HouseholderQR<CMatrix> qr(Xs);
        const CMatrix Hs = qr.solve(Y); // S x N

        for (Eigen::Index j = 0; j < S; ++j)
        {
            const auto k = static_cast<Eigen::Index>(support.users[static_cast<std::size_t>(j)]);
            for (Eigen::Index n = 0; n < N; ++n)
                out.h(k * N + n) = Hs(j, n);
        }
        out.residual = (Y - Xs * Hs).norm();
        return out;
    }

    InstEstimate plain_ls(const CMatrix &Y, const CMatrix &X, double max_condition)
    {
        return restricted_ls(Y, X, build_support(IndicatorVector::Ones(X.cols()), static_cast<std::size_t>(Y.cols())),
                             max_condition);
    }
}
