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

#ifndef SIXDMA_RANDOM_HPP
#define SIXDMA_RANDOM_HPP

#include "sixdma/types.hpp"

#include <cstdint>
#include <random>

namespace sixdma
{
    using Rng = std::mt19937_64;

    // Independent sub-streams of one experiment seed. Every random draw in the
    // library goes through a stream id so that results never depend on call order
    // across threads.
    enum class Stream : std::uint64_t
    {
        scenario = 1,
        pilots_stat = 2,
        channel_stat = 3,
        noise_stat = 4,
        schedule = 5,
        pso = 6,
        pilots_inst = 7,
        channel_inst = 8,
        noise_inst = 9,
        rms = 10,
        ergodic = 11,
    };

    // splitmix64 finaliser applied to (seed, stream, index)
    std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);
    std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

    Rng make_rng(std::uint64_t seed);
    Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

    // Circularly-symmetric complex Gaussian CN(0, variance)
    cplx complex_normal(Rng &rng, double variance = 1.0);

    double uniform(Rng &rng, double lo = 0.0, double hi = 1.0);

    // Uniform phase in [0, 2*pi)
    double uniform_phase(Rng &rng);
}

#endif
