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

// Independent reference computations used as test oracles. Everything here is deliberately
// naive (direct inverses, normal equations, exhaustive loops) so that it shares no code path
// with the library implementation it checks.

#ifndef SIXDMA_TEST_ORACLES_HPP
#define SIXDMA_TEST_ORACLES_HPP

#include <sixdma/types.hpp>

#include <cmath>
#include <functional>
#include <vector>

namespace oracle
{
    using namespace sixdma;

    // X diag(eta) X^H + sigma2 I
    inline CMatrix covariance(const RVector &eta, const CMatrix &X, double sigma2)
    {
        CMatrix S = CMatrix::Zero(X.rows(), X.rows());
        for (Eigen::Index k = 0; k < X.cols(); ++k)
            S += eta(k) * X.col(k) * X.col(k).adjoint();
        S.diagonal().array() += sigma2;
        return S;
    }

    inline CMatrix direct_inverse(const RVector &eta, const CMatrix &X, double sigma2)
    {
        return covariance(eta, X, sigma2).inverse();
    }

    // ln det via eigenvalues of the Hermitian covariance, trace via the explicit inverse
    inline double nll(const RVector &eta, const CMatrix &X, const CMatrix &Sc, double sigma2)
    {
        const CMatrix S = covariance(eta, X, sigma2);
        const Eigen::SelfAdjointEigenSolver<CMatrix> es(S);
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < S.rows(); ++i)
            logdet += std::log(es.eigenvalues()(i));
        return logdet + (S.inverse() * Sc).trace().real();
    }

    // Golden-section search for the minimum of a unimodal function on [lo, hi]
    inline long double golden_section(const std::function<long double(long double)> &f, long double lo,
                                      long double hi, int iterations = 400)
    {
        const long double inv_phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
        long double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
        long double fc = f(c), fd = f(d);
        for (int i = 0; i < iterations && hi - lo > 0; ++i)
        {
            if (fc < fd)
            {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = f(c);
            }
            else
            {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = f(d);
            }
        }
        return (lo + hi) / 2.0L;
    }

    // Least squares through the normal equations (X^H X) h = X^H y
    inline CMatrix normal_equations(const CMatrix &X, const CMatrix &Y)
    {
        const CMatrix G = X.adjoint() * X;
        return G.inverse() * (X.adjoint() * Y);
    }

    inline RMatrix pairwise_distances(const std::vector<Vec3> &points)
    {
        const auto n = static_cast<Eigen::Index>(points.size());
        RMatrix D(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
            {
                const double dx = points[i].x() - points[j].x();
                const double dy = points[i].y() - points[j].y();
                const double dz = points[i].z() - points[j].z();
                D(i, j) = std::sqrt(dx * dx + dy * dy + dz * dz);
            }
        return D;
    }

    // Transpose of Rz(gamma) Ry(beta) Rx(alpha), built from the elementary rotations
    inline Mat3 elementary_rotation(double alpha, double beta, double gamma)
    {
        Mat3 Rx, Ry, Rz;
        Rx << 1, 0, 0, 0, std::cos(alpha), -std::sin(alpha), 0, std::sin(alpha), std::cos(alpha);
        Ry << std::cos(beta), 0, std::sin(beta), 0, 1, 0, -std::sin(beta), 0, std::cos(beta);
        Rz << std::cos(gamma), -std::sin(gamma), 0, std::sin(gamma), std::cos(gamma), 0, 0, 0, 1;
        return (Rz * Ry * Rx).transpose();
    }
}

#endif
