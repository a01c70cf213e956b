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

#include "das/expint.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace das {

namespace {

// E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
double e1_series(double x)
{
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= -x / k;
        const double contrib = term / k;
        sum += contrib;
        if (std::fabs(contrib) < std::fabs(sum) * 1e-17)
            break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
}

// e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(x+7- ...)))), modified Lentz.
double scaled_e1_continued_fraction(double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return h;
    }
    return h;
}

} // namespace

double exp_e1_scaled(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("exp_e1_scaled: argument must be positive");
    if (std::isinf(x))
        return 0.0;
    if (x <= 1.0)
        return std::exp(x) * e1_series(x);
    return scaled_e1_continued_fraction(x);
}

} // namespace das
