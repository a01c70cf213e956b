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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "das/monte_carlo.hpp"

using namespace das;

namespace {

PathlossMatrix reference_gains()
{
    const std::vector<Position> users{{-2.5, -2.0}, {3.0, 4.5}};
    return build_pathloss_matrix(users, CellLayout::canonical(2));
}

} // namespace

TEST_CASE("stream mixing")
{
    CHECK(mix64(0) != mix64(1));
    RngStream a(1, 0);
    RngStream b(1, 1);
    RngStream c(2, 0);
    const double x = a.uniform();
    CHECK(x != b.uniform());
    CHECK(x != c.uniform());
    RngStream a2(1, 0);
    CHECK(a2.uniform() == x);
    CHECK(a2.seed() == 1);
    CHECK(a2.stream_id() == 0);
}

TEST_CASE("exponential variates have unit mean and variance")
{
    RngStream rng(42, 7);
    const std::size_t n = 400000;
    double s = 0.0;
    double s2 = 0.0;
    double u_min = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = rng.exponential();
        CHECK_UNARY(e >= 0.0);
        s += e;
        s2 += e * e;
        u_min = std::min(u_min, rng.uniform_open_left());
    }
    const double mean = s / static_cast<double>(n);
    const double var = s2 / static_cast<double>(n) - mean * mean;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
    CHECK(u_min > 0.0);
}

TEST_CASE("fading draws")
{
    RngStream rng(3, 0);
    const FadingDraw d = sample_fading(3, 4, rng);
    CHECK(d.power_gains.rows() == 3);
    CHECK(d.power_gains.cols() == 4);
    RngStream r1(3, 0);
    RngStream r2(3, 0);
    const auto batch = sample_fading_batch(5, 2, 2, r1);
    CHECK(batch.size() == 5);
    CHECK(batch[0].power_gains == sample_fading(2, 2, r2).power_gains);
}

TEST_CASE("instantaneous rate by hand")
{
    const ModeGroups g = derive_groups(TransmissionMode({1, 2}), 2);
    const std::vector<double> gains{0.5, 0.25};
    const std::vector<double> fade{2.0, 4.0};
    const LinkBudget b{10.0, 1.0};
    // signal 0.5*10*2 = 10, interference 0.25*10*4 = 10
    CHECK(instantaneous_user_rate(0, g, gains, fade, b) == doctest::Approx(std::log2(1.0 + 10.0 / 11.0)));
    const ModeGroups single = derive_groups(TransmissionMode({1, 1}), 2);
    CHECK(instantaneous_user_rate(0, single, gains, fade, b) == doctest::Approx(std::log2(21.0)));
    CHECK(instantaneous_user_rate(1, single, gains, fade, b) == 0.0);
}

TEST_CASE("summary statistics")
{
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const McEstimate e = summarize(x);
    CHECK(e.mean == doctest::Approx(2.5));
    CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(e.realizations == 4);
}

TEST_CASE("Monte Carlo agrees with the closed form and its error scales as 1/sqrt(n)")
{
    const PathlossMatrix g = reference_gains();
    const LinkBudget b = LinkBudget::from_snr_db(20.0);
    const TransmissionMode mode({2, 1});
    const double closed = ergodic_sum_rate_closed(mode, g, b).sum_rate;
    const McEstimate small = mc_ergodic_sum_rate(mode, g, b, McConfig{20000, 9, 0});
    const McEstimate big = mc_ergodic_sum_rate(mode, g, b, McConfig{40000, 9, 1});
    CHECK(std::fabs(big.mean - closed) < 4.0 * big.std_error);
    CHECK(big.std_error / small.std_error == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
    CHECK(big.realizations == 40000);
}

TEST_CASE("grid estimate equals per-point estimates on the same draws")
{
    const PathlossMatrix g = reference_gains();
    RngStream rng(4, 4);
    const auto draws = sample_fading_batch(500, 2, 2, rng);
    const std::vector<LinkBudget> budgets{LinkBudget::from_snr_db(0.0), LinkBudget::from_snr_db(30.0)};
    const TransmissionMode mode({1, 2});
    const auto grid = mc_ergodic_sum_rate_grid(mode, g, budgets, draws);
    for (std::size_t s = 0; s < budgets.size(); ++s)
        CHECK(grid[s].mean == mc_ergodic_sum_rate(mode, g, budgets[s], draws).mean);
}

TEST_CASE("mode selection in the reference geometry")
{
    const PathlossMatrix g = reference_gains();
    const CandidateSet ideal = enumerate_ideal(2, 2);
    const LinkBudget b10 = LinkBudget::from_snr_db(10.0);
    const LinkBudget b40 = LinkBudget::from_snr_db(40.0);
    CHECK(select_best_mode(ideal, g, b10, RateEstimator::closed_form).mode == TransmissionMode({2, 1}));
    CHECK(select_best_mode(ideal, g, b40, RateEstimator::closed_form).mode == TransmissionMode({1, 1}));

    // crossover between [2,1] and [1,1] lies between 32 and 34 dB
    CHECK(select_best_mode(ideal, g, LinkBudget::from_snr_db(32.0), RateEstimator::closed_form).mode ==
          TransmissionMode({2, 1}));
    CHECK(select_best_mode(ideal, g, LinkBudget::from_snr_db(34.0), RateEstimator::closed_form).mode ==
          TransmissionMode({1, 1}));

    const Selection mc = select_best_mode(ideal, g, b40, RateEstimator::monte_carlo, McConfig{4000, 1, 0});
    CHECK(mc.mode == TransmissionMode({1, 1}));
    CHECK(mc.index == 0);
    CHECK_THROWS_AS(select_best_mode(CandidateSet(CandidateProvenance::ideal), g, b10, RateEstimator::closed_form),
                    std::invalid_argument);
}

TEST_CASE("exact ties go to the first candidate")
{
    // symmetric users: [1,2] and [2,1] have identical rates
    const std::vector<Position> users{{0.0, 2.0}, {0.0, -2.0}};
    const PathlossMatrix g = build_pathloss_matrix(users, CellLayout::canonical(2));
    CandidateSet s(CandidateProvenance::ideal);
    s.insert(TransmissionMode({2, 1}));
    s.insert(TransmissionMode({1, 2}));
    const Selection sel = select_best_mode(s, g, LinkBudget::from_snr_db(10.0), RateEstimator::closed_form);
    CHECK(sel.index == 0);
}

TEST_CASE("cell average: thread count does not change the result")
{
    DropExperimentConfig cfg;
    cfg.snr_grid_db = {0.0, 20.0};
    cfg.drops = 12;
    cfg.mc = McConfig{200, 5, 0};
    cfg.selector = Selector::ideal_exhaustive_mc;
    cfg.threads = 1;
    const CellLayout layout = CellLayout::canonical(2);
    const auto one = drop_rates(cfg, layout);
    cfg.threads = 3;
    const auto three = drop_rates(cfg, layout);
    CHECK(one == three);
    REQUIRE(one.size() == 12);
    CHECK(one[0].size() == 2);
}

TEST_CASE("cell average rows")
{
    DropExperimentConfig cfg;
    cfg.snr_grid_db = {0.0, 40.0, 50.0};
    cfg.drops = 60;
    cfg.mc = McConfig{2, 8, 0};
    cfg.threads = 1;
    const CellLayout layout = CellLayout::canonical(2);

    cfg.selector = Selector::proposed_closed_form;
    const auto proposed = cell_average_experiment(cfg, layout);
    cfg.selector = Selector::ideal_exhaustive_closed;
    const auto ideal = cell_average_experiment(cfg, layout);
    REQUIRE(proposed.size() == 3);
    for (std::size_t s = 0; s < 3; ++s) {
        CHECK(proposed[s].drops == 60);
        CHECK(proposed[s].realizations == 0);
        CHECK(proposed[s].std_error > 0.0);
        // the ideal set contains the proposed one
        CHECK(ideal[s].mean_sum_rate >= proposed[s].mean_sum_rate - 1e-12);
    }
    CHECK(proposed[0].selector == "proposed_closed_form");

    // a multi-user mode flattens, a single-user mode gains about log2(10) per 10 dB
    cfg.selector = Selector::fixed_mode;
    cfg.snr_grid_db = {40.0, 50.0, 60.0};
    cfg.fixed_mode = TransmissionMode({1, 2});
    const auto multi = cell_average_experiment(cfg, layout);
    CHECK(multi[0].selector == "fixed_mode:[1,2]");
    const double step1 = multi[1].mean_sum_rate - multi[0].mean_sum_rate;
    const double step2 = multi[2].mean_sum_rate - multi[1].mean_sum_rate;
    CHECK(step1 > 0.0);
    CHECK(step1 < 0.3);
    CHECK(step2 < 0.5 * step1);
    cfg.fixed_mode = TransmissionMode({1, 1});
    const auto single = cell_average_experiment(cfg, layout);
    CHECK(single[1].mean_sum_rate - single[0].mean_sum_rate == doctest::Approx(std::log2(10.0)).epsilon(0.05));
}

TEST_CASE("swapping the two users of every drop leaves the [1,2]+[2,1] average unchanged")
{
    // per drop, rate([1,2]) with users (a,b) equals rate([2,1]) with users (b,a);
    // uniform drops are exchangeable, so the two fixed-mode curves agree in distribution
    DropExperimentConfig cfg;
    cfg.snr_grid_db = {20.0};
    cfg.drops = 3000;
    cfg.threads = 1;
    cfg.selector = Selector::fixed_mode;
    const CellLayout layout = CellLayout::canonical(2);
    cfg.fixed_mode = TransmissionMode({1, 2});
    const auto a = cell_average_experiment(cfg, layout);
    cfg.fixed_mode = TransmissionMode({2, 1});
    const auto b = cell_average_experiment(cfg, layout);
    CHECK(std::fabs(a[0].mean_sum_rate - b[0].mean_sum_rate) <
          4.0 * std::hypot(a[0].std_error, b[0].std_error));
}

TEST_CASE("single drop reports the Monte Carlo standard error")
{
    DropExperimentConfig cfg;
    cfg.snr_grid_db = {10.0};
    cfg.drops = 1;
    cfg.mc = McConfig{300, 2, 0};
    cfg.threads = 1;
    cfg.selector = Selector::ideal_exhaustive_mc;
    const auto rows = cell_average_experiment(cfg, CellLayout::canonical(2));
    CHECK(rows[0].std_error > 0.0);
    CHECK(rows[0].realizations == 300);
    cfg.selector = Selector::proposed_closed_form;
    CHECK(cell_average_experiment(cfg, CellLayout::canonical(2))[0].std_error == 0.0);
}

TEST_CASE("config validation")
{
    DropExperimentConfig cfg;
    cfg.snr_grid_db = {0.0};
    CHECK_NOTHROW(cfg.validate());
    cfg.drops = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.drops = 1;
    cfg.selector = Selector::fixed_mode;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.fixed_mode = TransmissionMode({1, 3});
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    const McConfig empty{0, 1, 0};
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}
