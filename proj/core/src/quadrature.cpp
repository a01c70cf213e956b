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

#include "das/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace das {

namespace {

// Bounds the work on noisy integrands: at most 2^kMaxDepth panels.
constexpr unsigned kMaxDepth = 14;

} // namespace

QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                  double abs_floor)
{
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_finite: need a finite interval with a < b");
    double error = 0.0;
    double l1 = 0.0;
    // boost stops on error <= rel_tol * L1; ask for a little more than needed
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, kMaxDepth, rel_tol * 0.1, &error, &l1);
    if (!std::isfinite(value) || error > rel_tol * std::fabs(value) + abs_floor) {
        std::ostringstream msg;
        msg << "quadrature did not converge on [" << a << ", " << b << "]: value " << value << ", error "
            << error;
        throw QuadratureError(msg.str(), value, error);
    }
    return {value, error};
}

QuadratureResult integrate_log_scale(const std::function<double(double)>& f, double lower, double upper,
                                     double rel_tol, double abs_floor)
{
    if (!(lower > 0.0) || !(upper > lower) || !std::isfinite(upper))
        throw std::invalid_argument("integrate_log_scale: need 0 < lower < upper < inf");
    const auto g = [&f](double t) {
        const double x = std::exp(t);
        return f(x) * x;
    };
    return integrate_finite(g, std::log(lower), std::log(upper), rel_tol, abs_floor);
}

} // namespace das
