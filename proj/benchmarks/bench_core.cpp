// SPDX-License-Identifier: Apache-2.0
//
// dasim - sum rate analysis and transmission mode selection for distributed antenna systems
// Copyright (C) 2026 The dasim authors
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

#include <benchmark/benchmark.h>

#include <cmath>

#include "das/expint.hpp"
#include "das/monte_carlo.hpp"

namespace {

void BM_ExpE1Scaled(benchmark::State& state)
{
    double x = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(das::exp_e1_scaled(x));
        x = x < 1e6 ? x * 1.37 : 1e-6;
    }
}
BENCHMARK(BM_ExpE1Scaled);

void BM_ClosedUserRate(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    das::UserLink link;
    for (std::size_t i = 0; i < n; ++i) {
        link.serving.push_back(std::pow(0.5, static_cast<double>(i)) * 0.01);
        link.interfering.push_back(std::pow(0.6, static_cast<double>(i)) * 0.003);
    }
    const das::LinkBudget budget = das::LinkBudget::from_snr_db(20.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(das::ergodic_user_rate_closed(link, budget));
}
BENCHMARK(BM_ClosedUserRate)->Arg(1)->Arg(2)->Arg(4);

void BM_QuadratureUserRate(benchmark::State& state)
{
    const das::UserLink link{{0.01, 0.004}, {0.002, 0.0007}};
    const das::LinkBudget budget = das::LinkBudget::from_snr_db(20.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(das::ergodic_user_rate_laplace(link, budget));
}
BENCHMARK(BM_QuadratureUserRate);

void BM_EnumerateIdeal(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(das::enumerate_ideal(n, n));
}
BENCHMARK(BM_EnumerateIdeal)->DenseRange(2, 5);

void BM_ProposedSelection(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const das::CellLayout layout = das::CellLayout::canonical(n);
    das::RngStream rng(1, 0);
    const auto users = das::sample_uniform_users(n, layout.cell_radius, rng);
    const auto gains = das::build_pathloss_matrix(users, layout);
    const auto distances = das::distance_matrix(users, layout.ports);
    const das::LinkBudget budget = das::LinkBudget::from_snr_db(20.0);
    for (auto _ : state) {
        const auto set = das::generate_min_distance_candidates(distances);
        benchmark::DoNotOptimize(das::select_best_mode(set, gains, budget, das::RateEstimator::closed_form));
    }
}
BENCHMARK(BM_ProposedSelection)->DenseRange(2, 5);

void BM_MonteCarloSumRate(benchmark::State& state)
{
    const auto layout = das::CellLayout::canonical(2);
    const auto gains = das::build_pathloss_matrix(std::vector<das::Position>{{-2.5, -2.0}, {3.0, 4.5}}, layout);
    const das::TransmissionMode mode({2, 1});
    const das::LinkBudget budget = das::LinkBudget::from_snr_db(20.0);
    const das::McConfig config{static_cast<std::size_t>(state.range(0)), 1, 0};
    for (auto _ : state)
        benchmark::DoNotOptimize(das::mc_ergodic_sum_rate(mode, gains, budget, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloSumRate)->Arg(1000)->Arg(5000);

} // namespace

BENCHMARK_MAIN();
