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

#include "sixdma/random.hpp"

#include <cmath>

namespace sixdma
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }
    }

    std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    {
        std::uint64_t h = splitmix64(seed);
        h = splitmix64(h ^ (stream * 0xd1b54a32d192ed03ULL));
        h = splitmix64(h ^ (index * 0x8cb92ba72f3d8dd7ULL));
        return h;
    }

    std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index)
    {
        return derive_seed(seed, static_cast<std::uint64_t>(stream), index);
    }

    Rng make_rng(std::uint64_t seed)
    {
        return Rng(seed);
    }

    Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index)
    {
        return Rng(derive_seed(seed, stream, index));
    }

    cplx complex_normal(Rng &rng, double variance)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
        const double re = normal(rng);
        const double im = normal(rng);
        return {re, im};
    }

    double uniform(Rng &rng, double lo, double hi)
    {
        std::uniform_real_distribution<double> dist(lo, hi);
        return dist(rng);
    }

    double uniform_phase(Rng &rng)
    {
        return uniform(rng, 0.0, 2.0 * pi);
    }
}
