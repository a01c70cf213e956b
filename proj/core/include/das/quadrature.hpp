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

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace das {

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate)
    {
    }
    double estimate() const { return estimate_; }
    double error_estimate() const { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Integral of f over (lower, upper) with 0 < lower < upper < inf, computed as
/// the integral of f(e^t) e^t over t in (ln lower, ln upper).
///
/// The log map turns multi-decade integrands (pdfs whose scales differ by the
/// pathloss ratio) into well-resolved bumps. Callers pick the truncation
/// points from the decay of their integrand at 0 and infinity. Adaptive
/// Gauss-Kronrod (15 point) bisection underneath.
/// Throws QuadratureError when the error estimate exceeds rel_tol * |value|
/// (plus abs_floor).
QuadratureResult integrate_log_scale(const std::function<double(double)>& f, double lower, double upper,
                                     double rel_tol, double abs_floor = 0.0);

/// Plain adaptive Gauss-Kronrod on a finite interval.
QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_floor = 0.0);

} // namespace das
