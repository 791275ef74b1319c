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

#include <sixdma/errors.hpp>
#include <sixdma/metrics.hpp>

#include <gtest/gtest.h>

using namespace sixdma;

TEST(Detection, PerfectAndInverted)
{
    IndicatorMatrix Z(2, 3);
    Z << 1, 0, 1, 0, 0, 1;
    EXPECT_DOUBLE_EQ(detection_error_rate(Z, Z).error_rate, 0.0);
    const IndicatorMatrix inv = IndicatorMatrix::Ones(2, 3) - Z;
    const auto d = detection_error_rate(Z, inv);
    EXPECT_DOUBLE_EQ(d.miss_rate, 1.0);
    EXPECT_DOUBLE_EQ(d.false_alarm_rate, 1.0);
    EXPECT_DOUBLE_EQ(d.error_rate, 2.0);
}

TEST(Detection, AllOnesAgainstHalf)
{
    IndicatorMatrix Z(2, 2);
    Z << 1, 0, 0, 1;
    const auto d = detection_error_rate(Z, IndicatorMatrix::Ones(2, 2));
    EXPECT_DOUBLE_EQ(d.miss_rate, 0.0);
    EXPECT_DOUBLE_EQ(d.false_alarm_rate, 1.0);
    EXPECT_DOUBLE_EQ(d.error_rate, 1.0);
}

TEST(Detection, DegenerateTruth)
{
    const auto d = detection_error_rate(IndicatorMatrix::Zero(2, 2), IndicatorMatrix::Zero(2, 2));
    EXPECT_TRUE(d.no_true_ones);
    EXPECT_FALSE(d.no_true_zeros);
    EXPECT_DOUBLE_EQ(d.error_rate, 0.0);
    EXPECT_THROW(detection_error_rate(IndicatorMatrix::Zero(2, 2), IndicatorMatrix::Zero(3, 2)), ShapeMismatch);
}

TEST(Nmse, ReferenceValues)
{
    RMatrix P(2, 2);
    P << 1, 2, 3, 4;
    EXPECT_DOUBLE_EQ(nmse(P, P), 0.0);
    EXPECT_DOUBLE_EQ(nmse(P, RMatrix::Zero(2, 2)), 1.0);
    EXPECT_DOUBLE_EQ(nmse(P, 2.0 * P), 1.0);
    EXPECT_THROW(nmse(RMatrix::Zero(2, 2), P), ZeroReference);
    EXPECT_THROW(nmse(P, RMatrix::Zero(3, 2)), ShapeMismatch);
}
