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

#include "sixdma/metrics.hpp"

namespace sixdma
{
    DetectionStats detection_error_rate(const IndicatorMatrix &truth, const IndicatorMatrix &estimate)
    {
        if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
            throw ShapeMismatch("detection_error_rate: shapes differ");

        double ones = 0.0, zeros = 0.0, misses = 0.0, alarms = 0.0;
        for (Eigen::Index k = 0; k < truth.cols(); ++k)
            for (Eigen::Index m = 0; m < truth.rows(); ++m)
            {
                const bool t = truth(m, k) != 0, e = estimate(m, k) != 0;
                if (t)
                {
                    ones += 1.0;
                    misses += e ? 0.0 : 1.0;
                }
                else
                {
                    zeros += 1.0;
                    alarms += e ? 1.0 : 0.0;
                }
            }

        DetectionStats s;
        s.no_true_ones = ones == 0.0;
        s.no_true_zeros = zeros == 0.0;
        s.miss_rate = s.no_true_ones ? 0.0 : misses / ones;
        s.false_alarm_rate = s.no_true_zeros ? 0.0 : alarms / zeros;
        s.error_rate = s.miss_rate + s.false_alarm_rate;
        return s;
    }
}
