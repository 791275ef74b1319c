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

#include "sixdma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sixdma
{
    std::vector<Hotspot> default_hotspots()
    {
        const double deg = pi / 180.0;
        return {{100.0, 15.0, -10.0 * deg, 30.0 * deg},
                {60.0, 10.0, -10.0 * deg, 150.0 * deg},
                {40.0, 5.0, -10.0 * deg, -90.0 * deg}};
    }

    void validate(const ScenarioConfig &c)
    {
        if (c.users == 0)
            throw std::invalid_argument("scenario: users must be positive");
        if (!(c.regular_ratio >= 0.0 && c.regular_ratio <= 1.0))
            throw std::invalid_argument("scenario: regular_ratio must lie in [0, 1]");
        if (!(c.inner_radius > 0.0 && c.outer_radius > c.inner_radius))
            throw std::invalid_argument("scenario: coverage radii must satisfy 0 < inner < outer");
        if (c.paths == 0)
            throw std::invalid_argument("scenario: paths must be positive");
        if (!(c.scatter_radius >= 0.0))
            throw std::invalid_argument("scenario: scatter_radius must be non-negative");
        if (!(c.transmit_power > 0.0))
            throw std::invalid_argument("scenario: transmit_power must be positive");
        if (!(c.noise_power >= 0.0))
            throw std::invalid_argument("scenario: noise_power must be non-negative");
        if (!(c.radio.wavelength > 0.0))
            throw std::invalid_argument("scenario: wavelength must be positive");
        for (const auto &h : c.hotspots)
            if (!(h.radius > 0.0 && h.distance > 0.0))
                throw std::invalid_argument("scenario: hotspot distance and radius must be positive");
        if (c.hotspots.empty() && c.regular_ratio < 1.0)
            throw std::invalid_argument("scenario: hotspot list is empty but regular_ratio < 1");
    }

    namespace
    {
        Vec3 uniform_direction(Rng &rng)
        {
            const double z = uniform(rng, -1.0, 1.0);
            const double phi = uniform(rng, -pi, pi);
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            return {rho * std::cos(phi), rho * std::sin(phi), z};
        }

        Vec3 uniform_in_ball(const Vec3 &center, double radius, Rng &rng)
        {
            const double r = radius * std::cbrt(uniform(rng));
            return center + r * uniform_direction(rng);
        }

        double uniform_shell_radius(double r0, double r1, Rng &rng)
        {
            return std::cbrt(uniform(rng, r0 * r0 * r0, r1 * r1 * r1));
        }
    }

    UserSpec make_user(const Vec3 &location, std::size_t paths, double scatter_radius, double wavelength, Rng &rng)
    {
        const double d = location.norm();
        if (!(d > 0.0))
            throw std::invalid_argument("make_user: user must not be located at the CPU");
        if (paths == 0)
            throw std::invalid_argument("make_user: at least one path is required");

        const double loss = std::pow(wavelength / (4.0 * pi * d), 2);
        UserSpec user;
        user.location = location;
        user.cluster_doa = -location / d;
        user.paths.reserve(paths);
        for (std::size_t i = 0; i < paths; ++i)
        {
            const Vec3 s = uniform_in_ball(location, scatter_radius, rng);
            const Vec3 f = -s.normalized();
            PathComponent path;
            path.gain = loss / static_cast<double>(paths);
            path.phase = uniform_phase(rng);
            path.theta = std::asin(std::clamp(f.z(), -1.0, 1.0));
            path.azimuth = std::atan2(f.y(), f.x());
            user.multipath_power += path.gain;
            user.paths.push_back(path);
        }
        return user;
    }

    std::vector<UserSpec> generate_scenario(const ScenarioConfig &config, std::uint64_t seed)
    {
        validate(config);
        Rng rng = make_rng(seed, Stream::scenario);

        const auto K = config.users;
        const auto regular = static_cast<std::size_t>(std::llround(config.regular_ratio * static_cast<double>(K)));

        std::vector<UserSpec> users;
        users.reserve(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            Vec3 location;
            int hotspot = -1;
            if (k < regular)
            {
                // Rejection keeps regular users out of the hotspot regions
                for (int attempt = 0;; ++attempt)
                {
                    location = uniform_shell_radius(config.inner_radius, config.outer_radius, rng) *
                               uniform_direction(rng);
                    bool inside = false;
                    for (const auto &h : config.hotspots)
                        inside = inside || (location - h.center()).norm() < h.radius;
                    if (!inside || attempt >= 1000)
                        break;
                }
            }
            else
            {
                std::uniform_int_distribution<std::size_t> pick(0, config.hotspots.size() - 1);
                const std::size_t v = pick(rng);
                location = uniform_in_ball(config.hotspots[v].center(), config.hotspots[v].radius, rng);
                hotspot = static_cast<int>(v);
            }
            UserSpec user = make_user(location, config.paths, config.scatter_radius, config.radio.wavelength, rng);
            user.hotspot = hotspot;
            users.push_back(std::move(user));
        }
        return users;
    }

    std::vector<UserSpec> planted_scenario(const ScenarioConfig &config, const std::vector<Vec3> &directions,
                                           const std::vector<std::size_t> &index, std::uint64_t seed)
    {
        validate(config);
        Rng rng = make_rng(seed, Stream::scenario);
        std::vector<UserSpec> users;
        users.reserve(index.size());
        for (std::size_t k = 0; k < index.size(); ++k)
        {
            if (index[k] >= directions.size())
                throw std::out_of_range("planted_scenario: direction index " + std::to_string(index[k]) +
                                        " out of range");
            const Vec3 f = directions[index[k]].normalized();
            const double d = uniform_shell_radius(config.inner_radius, config.outer_radius, rng);
            UserSpec user = make_user(-d * f, config.paths, config.scatter_radius, config.radio.wavelength, rng);
            user.cluster_doa = directions[index[k]];
            users.push_back(std::move(user));
        }
        return users;
    }
}
