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

namespace das {

// Scaled exponential integral e^x * E1(x) for x > 0, where
//
//            inf
//   E1(x) = int  exp(-t) / t dt .
//             x
//
// Only the scaled product enters the ergodic rate expressions, and computing it
// directly keeps far users and low SNR (large x) free of underflow. Uses the
// power series for x <= 1 and a continued fraction otherwise; relative error is
// below 1e-13 on (0, inf). Satisfies 1/(x+1) < e^x E1(x) < 1/x.
//
// Throws std::domain_error for x <= 0 or NaN.
double exp_e1_scaled(double x);

} // namespace das
