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

#ifndef SIXDMA_SCENARIO_HPP
#define SIXDMA_SCENARIO_HPP

#include "sixdma/channel.hpp"
#include "sixdma/random.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sixdma
{
    // Spherical hotspot region; the center lies at the given distance in direction (elevation, azimuth)
    struct Hotspot
    {
        double distance = 100.0; // Center distance from the CPU, meters
        double radius = 15.0;    // Meters
        double elevation = 0.0;  // Radians
        double azimuth = 0.0;    // Radians

        Vec3 center() const { return distance * doa_vector(elevation, azimuth); }
    };

    std::vector<Hotspot> default_hotspots();

    struct ScenarioConfig
    {
        std::size_t users = 12;                            // K
        double regular_ratio = 0.3;                        // Share of users in the regular region
        std::vector<Hotspot> hotspots = default_hotspots();
        double inner_radius = 30.0;                        // Coverage shell, meters
        double outer_radius = 200.0;
        std::size_t paths = 100;                           // Gamma, scatterers per user
        double scatter_radius = 3.0;                       // Scatterer ball radius around each user, meters
        double transmit_power = 1.0;                       // p, linear
        double snr_db = 25.0;                              // Average received per-antenna SNR over active links
        double noise_power = 0.0;                          // sigma^2; 0 derives it from snr_db
        RadioConfig radio;
    };

    // Throws std::invalid_argument on inconsistent settings
    void validate(const ScenarioConfig &config);

    // User with Gamma scatterers uniform in a ball around location
    // - path gains follow free-space loss at |location|, split equally over the paths
    // - path phases are uniform in [0, 2 pi), t_k is the sum of path gains
    UserSpec make_user(const Vec3 &location, std::size_t paths, double scatter_radius, double wavelength, Rng &rng);

    // Regular users uniform in the coverage shell outside the hotspots, hotspot users uniform in a hotspot
    // chosen with equal probability; round(regular_ratio K) users are regular
    std::vector<UserSpec> generate_scenario(const ScenarioConfig &config, std::uint64_t seed);

    // Users whose cluster direction is exactly one of the given unit directions
    // - direction i of user k is directions[index[k]]; distances uniform in the coverage shell
    std::vector<UserSpec> planted_scenario(const ScenarioConfig &config, const std::vector<Vec3> &directions,
                                           const std::vector<std::size_t> &index, std::uint64_t seed);
}

#endif
