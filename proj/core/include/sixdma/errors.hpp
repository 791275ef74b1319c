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

#ifndef SIXDMA_ERRORS_HPP
#define SIXDMA_ERRORS_HPP

#include <exception>
#include <stdexcept>
#include <string>

namespace sixdma
{
    // Operand dimensions do not conform
    class ShapeMismatch : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A least-squares system has more unknowns than observations or is numerically singular
    class RankDeficient : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // No selection satisfies the cardinality and minimum-distance constraints
    class InfeasibleProblem : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Exhaustive search would exceed its enumeration budget
    class InstanceTooLarge : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Normalisation by an all-zero reference
    class ZeroReference : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Stable machine-readable identifier for an exception, used in CLI error records.
    inline std::string error_kind(const std::exception &e)
    {
        if (dynamic_cast<const ShapeMismatch *>(&e))
            return "shape-mismatch";
        if (dynamic_cast<const RankDeficient *>(&e))
            return "rank-deficiency";
        if (dynamic_cast<const InfeasibleProblem *>(&e))
            return "infeasible-problem";
        if (dynamic_cast<const InstanceTooLarge *>(&e))
            return "instance-too-large";
        if (dynamic_cast<const ZeroReference *>(&e))
            return "zero-truth";
        if (dynamic_cast<const std::invalid_argument *>(&e))
            return "invalid-argument";
        return "runtime-error";
    }
}

#endif
