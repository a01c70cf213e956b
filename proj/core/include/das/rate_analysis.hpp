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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "das/geometry.hpp"
#include "das/mode_space.hpp"

namespace das {

/// Numerical knobs for the closed-form rate evaluation.
struct EvalPolicy {
    /// Relative spread applied to coincident gains before partial fractions.
    double tie_epsilon = 1e-9;
    /// Largest partial-fraction coefficient product accepted before falling back.
    double conditioning_threshold = 1e12;
    double quadrature_rel_tol = 1e-9;
    /// Disabling this leaves exactly tied gains singular; used for fault injection.
    bool perturb_ties = true;
    /// Monte Carlo fallback, used only when the quadrature route also fails.
    std::uint64_t fallback_seed = 0x5eed;
    std::size_t fallback_realizations = 200'000;

    void validate() const;
};

/// Which route produced a rate. Ordered from strongest to weakest.
enum class RateMethod { closed_form = 0, quadrature = 1, monte_carlo_fallback = 2 };

std::string_view to_string(RateMethod method);

/// Large-scale gains seen by one user: serving ports and interfering ports.
struct UserLink {
    std::vector<double> serving;
    std::vector<double> interfering;

    bool active() const { return !serving.empty(); }
};

UserLink user_link(const ModeGroups& groups, std::size_t user, std::span<const double> gains_row);

struct UserRate {
    double rate = 0.0;
    RateMethod method = RateMethod::closed_form;
};

struct UserRateBreakdown {
    std::vector<double> per_user_rates;
    double sum_rate = 0.0;
    RateMethod method = RateMethod::closed_form;
};

/// Spreads gains that coincide within tie_epsilon (relative) across the union
/// of both lists: the k-th repeat of a value is scaled by (1 + k * tie_epsilon).
/// Returns the number of values that were moved.
std::size_t separate_coincident_gains(UserLink& link, double tie_epsilon);

/// Partial-fraction weights prod_{l != k} S_k / (S_k - S_l) of a hypoexponential sum.
std::vector<double> partial_fraction_weights(std::span<const double> gains);

/// Density of the desired power sum_k S_k P |h_k|^2 at rho > 0.
double signal_pdf(double rho, std::span<const double> serving_gains, double power);

/// Density of interference plus noise, noise + sum_u S_u P |h_u|^2, at theta > noise.
double interference_pdf(double theta, std::span<const double> interfering_gains, double power, double noise);

/// SINR density of a user with both serving and interfering ports.
/// Throws std::invalid_argument when either set is empty.
double sinr_pdf(double rho, const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy = {});

/// Integral of sinr_pdf over (0, upper); upper = inf gives the total mass.
/// Log-scaled adaptive quadrature; throws QuadratureError on non-convergence.
double integrate_sinr_pdf(const UserLink& link, const LinkBudget& budget, double upper,
                          const EvalPolicy& policy = {});

/// Ergodic rate E[log2(1 + SINR)] in bits/s/Hz.
///
/// Three routes:
///  - serving and interfering ports: double partial-fraction sum over
///    (k, u) of weight * S_k / (S_k - S_u) * (g(a_k) - g(a_u)),
///    g = exp_e1_scaled, a = noise / (S P);
///  - serving ports only: sum_k A_k g(a_k);
///  - either coefficient set ill-conditioned (a product above
///    policy.conditioning_threshold, or non-finite): the Laplace-transform
///    quadrature below, then Monte Carlo if that fails as well.
/// An inactive user (no serving port) gets exactly 0.
UserRate ergodic_user_rate_closed(const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy = {});

/// Per-user closed-form rates and their sum. Throws std::invalid_argument on
/// a mode/matrix dimension mismatch.
UserRateBreakdown ergodic_sum_rate_closed(const TransmissionMode& mode, const PathlossMatrix& gains,
                                          const LinkBudget& budget, const EvalPolicy& policy = {});

/// Oracle: integrates log2(1 + rho) against sinr_pdf (or the desired-power
/// density when there is no interference) on a log-scaled axis.
/// Throws QuadratureError on non-convergence.
double ergodic_user_rate_quadrature(const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy = {});

/// Well-conditioned quadrature route that never forms partial fractions:
///   E[ln(1 + X/(n + Y))] = int_0^inf exp(-n s)/s * L_Y(s) * (1 - L_X(s)) ds,
/// with L(s) = prod 1/(1 + S P s) the Laplace transform of each power sum.
/// Valid for tied gains. Throws QuadratureError on non-convergence.
double ergodic_user_rate_laplace(const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy = {});

/// Monte Carlo estimate of the user rate with the policy's fallback stream.
double ergodic_user_rate_monte_carlo(const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy = {});

} // namespace das
