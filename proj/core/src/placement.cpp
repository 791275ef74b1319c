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

#include "sixdma/placement.hpp"
#include "sixdma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sixdma
{
    void validate(const SelectionProblem &problem)
    {
        const auto M = problem.power.rows();
        if (problem.distances.rows() != M || problem.distances.cols() != M)
            throw ShapeMismatch("selection problem: distance matrix must be " + std::to_string(M) + " x " +
                                std::to_string(M));
        if (problem.surfaces == 0 || problem.surfaces > static_cast<std::size_t>(M))
            throw std::invalid_argument("selection problem: B must lie in [1, M]");
        if (!(problem.transmit_power > 0.0) || !(problem.noise_power > 0.0))
            throw std::invalid_argument("selection problem: transmit and noise power must be positive");
        if (!(problem.min_distance >= 0.0))
            throw std::invalid_argument("selection problem: d_min must be non-negative");
    }

    double sum_rate_upper(const IndicatorVector &s, const RMatrix &P, double p, double sigma2)
    {
        if (s.size() != P.rows())
            throw ShapeMismatch("sum_rate_upper: selection has " + std::to_string(s.size()) + " entries, P has " +
                                std::to_string(P.rows()) + " rows");
        const double snr = p / sigma2;
        double rate = 0.0;
        for (Eigen::Index k = 0; k < P.cols(); ++k)
        {
            double received = 0.0;
            for (Eigen::Index m = 0; m < P.rows(); ++m)
                if (s(m))
                    received += P(m, k);
            rate += std::log2(1.0 + snr * received);
        }
        return rate;
    }

    double sum_rate_upper(const IndicatorVector &s, const SelectionProblem &problem)
    {
        return sum_rate_upper(s, problem.power, problem.transmit_power, problem.noise_power);
    }

    IndicatorVector selection_from_indices(const std::vector<std::size_t> &indices, std::size_t M)
    {
        IndicatorVector s = IndicatorVector::Zero(static_cast<Eigen::Index>(M));
        for (auto m : indices)
        {
            if (m >= M)
                throw std::out_of_range("selection_from_indices: index " + std::to_string(m) + " out of range");
            s(static_cast<Eigen::Index>(m)) = 1;
        }
        return s;
    }

    std::vector<std::size_t> selected_indices(const IndicatorVector &s)
    {
        std::vector<std::size_t> out;
        for (Eigen::Index m = 0; m < s.size(); ++m)
            if (s(m))
                out.push_back(static_cast<std::size_t>(m));
        return out;
    }

    IndicatorVector round_selection(const RVector &s)
    {
        IndicatorVector out(s.size());
        for (Eigen::Index m = 0; m < s.size(); ++m)
            out(m) = std::round(s(m)) >= 1.0 ? 1 : 0;
        return out;
    }

    RateEstimate ergodic_sum_rate_mc(const IndicatorVector &s, const ChannelSampler &sampler, double p, double sigma2,
                                     std::size_t trials, Rng &rng)
    {
        if (trials == 0)
            throw std::invalid_argument("ergodic_sum_rate_mc: trials must be positive");
        if (s.size() != static_cast<Eigen::Index>(sampler.poses()))
            throw ShapeMismatch("ergodic_sum_rate_mc: selection length does not match the candidate grid");

        const auto poses = selected_indices(s);
        const auto K = static_cast<Eigen::Index>(sampler.users());
        RateEstimate out;
        out.trials = trials;
        if (poses.empty())
            return out;

        const double snr = p / sigma2;
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t t = 0; t < trials; ++t)
        {
            const CMatrix H = sampler.sample(poses, rng);
            CMatrix G = snr * (H.adjoint() * H);
            G.diagonal().array() += 1.0;
            const Eigen::LLT<CMatrix> llt(G);
            const CMatrix Lf = llt.matrixL();
            double rate = 0.0;
            for (Eigen::Index k = 0; k < K; ++k)
                rate += 2.0 * std::log2(Lf(k, k).real());
            sum += rate;
            sum2 += rate * rate;
        }
        const double n = static_cast<double>(trials);
        out.mean = sum / n;
        if (trials > 1)
        {
            const double var = std::max(0.0, (sum2 - n * out.mean * out.mean) / (n - 1.0));
            out.std_error = std::sqrt(var / n);
        }
        return out;
    }

    namespace
    {
        double penalty_of(const IndicatorVector &s, const RMatrix &D, double d_min, std::size_t B)
        {
            const auto idx = selected_indices(s);
            double violations = 0.0;
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = i + 1; j < idx.size(); ++j)
                    if (D(static_cast<Eigen::Index>(idx[i]), static_cast<Eigen::Index>(idx[j])) < d_min)
                        violations += 1.0;
            return violations + std::abs(static_cast<double>(B) - static_cast<double>(idx.size()));
        }
    }

    double penalty(const RVector &s, const RMatrix &D, double d_min, std::size_t B)
    {
        if (D.rows() != s.size() || D.cols() != s.size())
            throw ShapeMismatch("penalty: distance matrix does not match the selection length");
        return penalty_of(round_selection(s), D, d_min, B);
    }

    double fitness(const RVector &s, const SelectionProblem &problem, double tau)
    {
        const IndicatorVector r = round_selection(s);
        const double q = penalty_of(r, problem.distances, problem.min_distance, problem.surfaces);
        const double rate = sum_rate_upper(r, problem);
        return rate - tau * q;
    }

    bool is_feasible(const IndicatorVector &s, const SelectionProblem &problem)
    {
        return s.size() == problem.power.rows() &&
               penalty_of(s, problem.distances, problem.min_distance, problem.surfaces) == 0.0;
    }

    IndicatorVector repair_selection(const IndicatorVector &s_in, const SelectionProblem &problem)
    {
        validate(problem);
        const auto M = problem.power.rows();
        if (s_in.size() != M)
            throw ShapeMismatch("repair_selection: selection length does not match the problem");

        IndicatorVector s = s_in;
        const auto &D = problem.distances;
        const double d_min = problem.min_distance;

        auto rate_without = [&](Eigen::Index m) {
            IndicatorVector t = s;
            t(m) = 0;
            return sum_rate_upper(t, problem);
        };

        // Drop poses with distance violations, most conflicts first, then the smallest rate loss
        for (;;)
        {
            Eigen::Index worst = -1;
            int worst_count = 0;
            double worst_rate = 0.0;
            for (Eigen::Index m = 0; m < M; ++m)
            {
                if (!s(m))
                    continue;
                int count = 0;
                for (Eigen::Index j = 0; j < M; ++j)
                    if (j != m && s(j) && D(m, j) < d_min)
                        ++count;
                if (count == 0)
                    continue;
                const double r = rate_without(m);
                if (count > worst_count || (count == worst_count && r > worst_rate))
                {
                    worst = m;
                    worst_count = count;
                    worst_rate = r;
                }
            }
            if (worst < 0)
                break;
            s(worst) = 0;
        }

        // Drop surplus poses with the smallest contribution
        while (static_cast<std::size_t>(s.sum()) > problem.surfaces)
        {
            Eigen::Index drop = -1;
            double best = -1.0;
            for (Eigen::Index m = 0; m < M; ++m)
                if (s(m))
                {
                    const double r = rate_without(m);
                    if (r > best)
                    {
                        best = r;
                        drop = m;
                    }
                }
            s(drop) = 0;
        }

        // Add compatible poses with the largest marginal gain
        while (static_cast<std::size_t>(s.sum()) < problem.surfaces)
        {
            Eigen::Index add = -1;
            double best = -1.0;
            for (Eigen::Index m = 0; m < M; ++m)
            {
                if (s(m))
                    continue;
                bool ok = true;
                for (Eigen::Index j = 0; j < M && ok; ++j)
                    ok = !(s(j) && D(m, j) < d_min);
                if (!ok)
                    continue;
                IndicatorVector t = s;
                t(m) = 1;
                const double r = sum_rate_upper(t, problem);
                if (r > best)
                {
                    best = r;
                    add = m;
                }
            }
            if (add < 0)
                throw InfeasibleProblem("repair_selection: no pose can be added without violating d_min = " +
                                        std::to_string(d_min));
            s(add) = 1;
        }
        return s;
    }

    void validate(const PsoConfig &config)
    {
        if (config.particles == 0 || config.iterations == 0)
            throw std::invalid_argument("pso: particles and iterations must be positive");
        if (!(config.penalty_weight >= 0.0))
            throw std::invalid_argument("pso: penalty_weight must be non-negative");
        if (!(config.velocity_limit > 0.0))
            throw std::invalid_argument("pso: velocity_limit must be positive");
    }

    PsoResult pso_optimize(const SelectionProblem &problem, const PsoConfig &config)
    {
        validate(problem);
        validate(config);

        const auto M = problem.power.rows();
        const auto B = static_cast<Eigen::Index>(problem.surfaces);
        const auto I = config.particles;

        PsoResult result;
        result.penalty_weight = config.penalty_weight > 0.0
                                    ? config.penalty_weight
                                    : 10.0 * sum_rate_upper(IndicatorVector::Ones(M), problem);
        if (!(result.penalty_weight > 0.0))
            result.penalty_weight = 1.0; // All-zero power matrix, any positive weight separates feasibility
        const double tau = result.penalty_weight;
        const double vmax = config.velocity_limit;

        Rng rng = make_rng(config.seed, Stream::pso);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        std::vector<RVector> pos(I), vel(I), pbest(I);
        std::vector<double> pbest_fit(I);
        std::vector<Eigen::Index> order(static_cast<std::size_t>(M));
        for (std::size_t i = 0; i < I; ++i)
        {
            // Random B-subset: selected entries in [0.5, 1], the others in [0, 0.5)
            std::iota(order.begin(), order.end(), Eigen::Index{0});
            std::shuffle(order.begin(), order.end(), rng);
            pos[i].resize(M);
            for (Eigen::Index j = 0; j < M; ++j)
                pos[i](order[static_cast<std::size_t>(j)]) = j < B ? 0.5 + 0.5 * unit(rng) : 0.5 * unit(rng);
            vel[i].resize(M);
            for (Eigen::Index j = 0; j < M; ++j)
                vel[i](j) = vmax * (2.0 * unit(rng) - 1.0) * 0.1;
            pbest[i] = pos[i];
            pbest_fit[i] = fitness(pos[i], problem, tau);
        }

        std::size_t g = 0;
        for (std::size_t i = 1; i < I; ++i)
            if (pbest_fit[i] > pbest_fit[g])
                g = i;
        RVector gbest = pbest[g];
        double gbest_fit = pbest_fit[g];
        result.trace.reserve(config.iterations + 1);
        result.trace.push_back(gbest_fit);

        for (std::size_t t = 0; t < config.iterations; ++t)
        {
            for (std::size_t i = 0; i < I; ++i)
            {
                for (Eigen::Index j = 0; j < M; ++j)
                {
                    const double r1 = unit(rng), r2 = unit(rng);
                    double v = config.inertia * vel[i](j) + config.c1 * r1 * (pbest[i](j) - pos[i](j)) +
                               config.c2 * r2 * (gbest(j) - pos[i](j));
                    v = std::clamp(v, -vmax, vmax);
                    vel[i](j) = v;
                    pos[i](j) = std::clamp(pos[i](j) + v, 0.0, 1.0);
                }
            }
            // Sequential reduction, lowest particle index wins ties
            for (std::size_t i = 0; i < I; ++i)
            {
                const double f = fitness(pos[i], problem, tau);
                if (f > pbest_fit[i])
                {
                    pbest_fit[i] = f;
                    pbest[i] = pos[i];
                }
                if (f > gbest_fit)
                {
                    gbest_fit = f;
                    gbest = pos[i];
                }
            }
            result.trace.push_back(gbest_fit);
        }

        result.selection = round_selection(gbest);
        if (!is_feasible(result.selection, problem))
        {
            result.selection = repair_selection(result.selection, problem);
            result.repaired = true;
        }
        result.sum_rate = sum_rate_upper(result.selection, problem);
        return result;
    }

    namespace
    {
        double binomial(std::size_t n, std::size_t k)
        {
            k = std::min(k, n - k);
            double c = 1.0;
            for (std::size_t i = 1; i <= k; ++i)
                c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
            return c;
        }
    }

    IndicatorVector brute_force_select(const SelectionProblem &problem, double max_subsets)
    {
        validate(problem);
        const auto M = static_cast<std::size_t>(problem.power.rows());
        const std::size_t B = problem.surfaces;
        if (binomial(M, B) > max_subsets)
            throw InstanceTooLarge("brute_force_select: C(" + std::to_string(M) + ", " + std::to_string(B) +
                                   ") subsets exceed the budget");

        std::vector<std::size_t> idx(B);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        IndicatorVector best;
        double best_rate = -1.0;
        for (;;)
        {
            const IndicatorVector s = selection_from_indices(idx, M);
            if (is_feasible(s, problem))
            {
                const double r = sum_rate_upper(s, problem);
                if (r > best_rate)
                {
                    best_rate = r;
                    best = s;
                }
            }
            // Next combination in lexicographic order
            std::size_t i = B;
            while (i > 0 && idx[i - 1] == M - B + i - 1)
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t j = i; j < B; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (best_rate < 0.0)
            throw InfeasibleProblem("brute_force_select: no feasible selection exists");
        return best;
    }

    IndicatorVector rms_baseline(const SelectionProblem &problem, std::size_t samples, std::uint64_t seed,
                                 std::size_t max_failures)
    {
        validate(problem);
        if (samples == 0)
            throw std::invalid_argument("rms_baseline: samples must be positive");

        const auto M = static_cast<std::size_t>(problem.power.rows());
        Rng rng = make_rng(seed, Stream::rms);
        std::vector<std::size_t> order(M);

        IndicatorVector best;
        double best_rate = -1.0;
        std::size_t failures = 0;
        for (std::size_t accepted = 0; accepted < samples;)
        {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::shuffle(order.begin(), order.end(), rng);
            const IndicatorVector s =
                selection_from_indices({order.begin(), order.begin() + static_cast<std::ptrdiff_t>(problem.surfaces)},
                                       M);
            if (!is_feasible(s, problem))
            {
                if (++failures < max_failures)
                    continue;
                if (best_rate < 0.0)
                    throw InfeasibleProblem("rms_baseline: no feasible sample within " +
                                            std::to_string(max_failures) + " draws");
                break; // Keep the best of the feasible samples found so far
            }
            ++accepted;
            const double r = sum_rate_upper(s, problem);
            if (r > best_rate)
            {
                best_rate = r;
                best = s;
            }
        }
        return best;
    }
}
