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

#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "das/expint.hpp"

using das::exp_e1_scaled;

namespace {

// E1(x) = -Ei(-x); loses relative accuracy past x ~ 50
double reference_std(double x)
{
    return std::exp(x) * -std::expint(-x);
}

double reference_boost(double x)
{
    return std::exp(x) * boost::math::expint(1, x);
}

} // namespace

TEST_CASE("known values")
{
    CHECK(exp_e1_scaled(1.0) == doctest::Approx(0.596347362323194).epsilon(1e-13));
    CHECK(exp_e1_scaled(1.0) / std::log(2.0) == doctest::Approx(0.8603).epsilon(1e-4));
    CHECK(exp_e1_scaled(0.5) == doctest::Approx(std::exp(0.5) * 0.559773594776161).epsilon(1e-13));
}

TEST_CASE("agrees with independent implementations on a log grid")
{
    double worst_std = 0.0;
    double worst_boost = 0.0;
    for (double lx = -6.0; lx <= 2.5; lx += 0.01) {
        const double x = std::pow(10.0, lx);
        const double f = exp_e1_scaled(x);
        if (x <= 50.0)
            worst_std = std::max(worst_std, std::fabs(f - reference_std(x)) / f);
        worst_boost = std::max(worst_boost, std::fabs(f - reference_boost(x)) / f);
    }
    CHECK(worst_std < 1e-12);
    CHECK(worst_boost < 1e-12);
}

TEST_CASE("bracket 1/(x+1) < f(x) < 1/x")
{
    for (double lx = -6.0; lx <= 6.0; lx += 0.005) {
        const double x = std::pow(10.0, lx);
        const double f = exp_e1_scaled(x);
        CHECK_UNARY(1.0 / (x + 1.0) < f);
        CHECK_UNARY(f < 1.0 / x);
    }
}

TEST_CASE("asymptotics")
{
    // x e^x E1(x) -> 1 - 1/x + 2/x^2
    const double x = 1e6;
    CHECK(x * exp_e1_scaled(x) == doctest::Approx(1.0 - 1.0 / x + 2.0 / (x * x)).epsilon(1e-14));
    // e^x E1(x) ~ -gamma - ln x for small x
    const double s = 1e-10;
    CHECK(exp_e1_scaled(s) == doctest::Approx(-0.5772156649015329 - std::log(s)).epsilon(1e-9));
    CHECK(exp_e1_scaled(1e300) == doctest::Approx(1e-300));
    CHECK(exp_e1_scaled(std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("continuous across the series / continued fraction switch")
{
    const double below = exp_e1_scaled(std::nextafter(1.0, 0.0));
    const double above = exp_e1_scaled(std::nextafter(1.0, 2.0));
    CHECK(std::fabs(below - above) / above < 1e-13);
}

TEST_CASE("domain")
{
    CHECK_THROWS_AS(exp_e1_scaled(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_e1_scaled(-1.0), std::domain_error);
    CHECK_THROWS_AS(exp_e1_scaled(std::nan("")), std::domain_error);
}
