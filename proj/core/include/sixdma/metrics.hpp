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

#ifndef SIXDMA_METRICS_HPP
#define SIXDMA_METRICS_HPP

#include "sixdma/errors.hpp"
#include "sixdma/types.hpp"

#include <string>

namespace sixdma
{
    struct DetectionStats
    {
        double error_rate = 0.0;       // miss_rate + false_alarm_rate
        double miss_rate = 0.0;        // Misses over true ones
        double false_alarm_rate = 0.0; // False alarms over true zeros
        bool no_true_ones = false;     // Miss rate undefined, reported as 0
        bool no_true_zeros = false;    // False-alarm rate undefined, reported as 0
    };

    DetectionStats detection_error_rate(const IndicatorMatrix &truth, const IndicatorMatrix &estimate);

    // |truth - estimate|^2 / |truth|^2; throws ZeroReference for an all-zero truth
    template <typename Derived1, typename Derived2>
    double nmse(const Eigen::MatrixBase<Derived1> &truth, const Eigen::MatrixBase<Derived2> &estimate)
    {
        if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
            throw ShapeMismatch("nmse: truth is " + std::to_string(truth.rows()) + " x " +
                                std::to_string(truth.cols()) + ", estimate is " + std::to_string(estimate.rows()) +
                                " x " + std::to_string(estimate.cols()));
        const double ref = truth.squaredNorm();
        if (!(ref > 0.0))
            throw ZeroReference("nmse: reference has zero norm");
        return (truth - estimate).squaredNorm() / ref;
    }
}

#endif
