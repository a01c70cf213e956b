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

#include "das/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "das/expint.hpp"
#include "das/quadrature.hpp"
#include "das/random.hpp"

namespace das {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Lower truncation of log-scaled integrals, relative to the integrand's scale.
constexpr double kLowerCut = 1e-14;
// Upper truncation in units of the slowest exponential decay length.
constexpr double kDecayLengths = 60.0;

void require_positive_gains(std::span<const double> gains, const char* what)
{
    for (double s : gains)
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::invalid_argument(std::string(what) + ": gains must be positive and finite");
}

UserLink prepared(const UserLink& link, const EvalPolicy& policy)
{
    UserLink out = link;
    if (policy.perturb_ties)
        separate_coincident_gains(out, policy.tie_epsilon);
    return out;
}

double max_of(std::span<const double> v)
{
    return *std::max_element(v.begin(), v.end());
}

double min_of(std::span<const double> v)
{
    return *std::min_element(v.begin(), v.end());
}

double sum_of(std::span<const double> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0);
}

struct ClosedTerms {
    double rate = 0.0;     // bits/s/Hz
    double worst = 0.0;    // largest |coefficient product|
};

ClosedTerms closed_interference(const UserLink& link, const LinkBudget& budget)
{
    const auto a = partial_fraction_weights(link.serving);
    const auto b = partial_fraction_weights(link.interfering);
    ClosedTerms out;
    double acc = 0.0;
    for (std::size_t k = 0; k < link.serving.size(); ++k) {
        const double sk = link.serving[k];
        const double gk = exp_e1_scaled(budget.noise_variance / (sk * budget.power));
        for (std::size_t u = 0; u < link.interfering.size(); ++u) {
            const double su = link.interfering[u];
            const double gu = exp_e1_scaled(budget.noise_variance / (su * budget.power));
            const double coeff = a[k] * b[u] * sk / (sk - su);
            out.worst = std::max(out.worst, std::isfinite(coeff) ? std::fabs(coeff) : HUGE_VAL);
            acc += coeff * (gk - gu);
        }
    }
    out.rate = acc / kLn2;
    return out;
}

ClosedTerms closed_single_user(const UserLink& link, const LinkBudget& budget)
{
    const auto a = partial_fraction_weights(link.serving);
    ClosedTerms out;
    double acc = 0.0;
    for (std::size_t k = 0; k < link.serving.size(); ++k) {
        const double sk = link.serving[k];
        out.worst = std::max(out.worst, std::isfinite(a[k]) ? std::fabs(a[k]) : HUGE_VAL);
        acc += a[k] * exp_e1_scaled(budget.noise_variance / (sk * budget.power));
    }
    out.rate = acc / kLn2;
    return out;
}

// 1 - prod 1/(1 + c_k s), without cancellation at small s.
double one_minus_laplace(std::span<const double> scales, double s)
{
    double log_sum = 0.0;
    for (double c : scales)
        log_sum += std::log1p(c * s);
    return -std::expm1(-log_sum);
}

double laplace(std::span<const double> scales, double s)
{
    double prod = 1.0;
    for (double c : scales)
        prod /= 1.0 + c * s;
    return prod;
}

} // namespace

void EvalPolicy::validate() const
{
    if (!(tie_epsilon > 0.0) || !(tie_epsilon < 1e-3))
        throw std::invalid_argument("tie_epsilon must lie in (0, 1e-3)");
    if (!(conditioning_threshold > 0.0))
        throw std::invalid_argument("conditioning_threshold must be positive");
    if (!(quadrature_rel_tol > 0.0))
        throw std::invalid_argument("quadrature_rel_tol must be positive");
    if (fallback_realizations < 2)
        throw std::invalid_argument("fallback_realizations must be at least 2");
}

std::string_view to_string(RateMethod method)
{
    switch (method) {
    case RateMethod::closed_form:
        return "closed_form";
    case RateMethod::quadrature:
        return "quadrature";
    case RateMethod::monte_carlo_fallback:
        return "monte_carlo_fallback";
    }
    return "unknown";
}

UserLink user_link(const ModeGroups& groups, std::size_t user, std::span<const double> gains_row)
{
    if (user >= groups.users())
        throw std::invalid_argument("user index out of range");
    UserLink link;
    for (std::size_t j : groups.serving_sets[user]) {
        if (j >= gains_row.size())
            throw std::invalid_argument("gain row shorter than the mode");
        link.serving.push_back(gains_row[j]);
    }
    for (std::size_t j : groups.interference_sets[user]) {
        if (j >= gains_row.size())
            throw std::invalid_argument("gain row shorter than the mode");
        link.interfering.push_back(gains_row[j]);
    }
    return link;
}

std::size_t separate_coincident_gains(UserLink& link, double tie_epsilon)
{
    std::vector<double*> values;
    for (double& s : link.serving)
        values.push_back(&s);
    for (double& s : link.interfering)
        values.push_back(&s);
    std::stable_sort(values.begin(), values.end(), [](const double* a, const double* b) { return *a < *b; });

    std::size_t moved = 0;
    std::size_t run = 0;
    double anchor = values.empty() ? 0.0 : *values.front();
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (*values[i] - anchor <= tie_epsilon * anchor) {
            ++run;
            *values[i] = anchor * (1.0 + static_cast<double>(run) * tie_epsilon);
            ++moved;
        } else {
            anchor = *values[i];
            run = 0;
        }
    }
    return moved;
}

std::vector<double> partial_fraction_weights(std::span<const double> gains)
{
    std::vector<double> w(gains.size(), 1.0);
    for (std::size_t k = 0; k < gains.size(); ++k)
        for (std::size_t l = 0; l < gains.size(); ++l)
            if (l != k)
                w[k] *= gains[k] / (gains[k] - gains[l]);
    return w;
}

double signal_pdf(double rho, std::span<const double> serving_gains, double power)
{
    if (serving_gains.empty())
        throw std::invalid_argument("signal_pdf: no serving ports");
    require_positive_gains(serving_gains, "signal_pdf");
    if (rho < 0.0)
        return 0.0;
    const auto w = partial_fraction_weights(serving_gains);
    double f = 0.0;
    for (std::size_t k = 0; k < serving_gains.size(); ++k) {
        const double scale = serving_gains[k] * power;
        f += w[k] / scale * std::exp(-rho / scale);
    }
    return std::max(f, 0.0);
}

double interference_pdf(double theta, std::span<const double> interfering_gains, double power, double noise)
{
    if (interfering_gains.empty())
        throw std::invalid_argument("interference_pdf: no interfering ports");
    require_positive_gains(interfering_gains, "interference_pdf");
    if (theta <= noise)
        return 0.0;
    return signal_pdf(theta - noise, interfering_gains, power);
}

double sinr_pdf(double rho, const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy)
{
    if (link.serving.empty() || link.interfering.empty())
        throw std::invalid_argument("sinr_pdf: needs serving and interfering ports");
    require_positive_gains(link.serving, "sinr_pdf");
    require_positive_gains(link.interfering, "sinr_pdf");
    budget.validate();
    if (rho < 0.0)
        return 0.0;

    const UserLink l = prepared(link, policy);
    const auto a = partial_fraction_weights(l.serving);
    const auto b = partial_fraction_weights(l.interfering);
    const double p = budget.power;
    const double n = budget.noise_variance;
    double f = 0.0;
    for (std::size_t k = 0; k < l.serving.size(); ++k) {
        const double sk = l.serving[k];
        const double decay = std::exp(-n * rho / (sk * p));
        for (std::size_t u = 0; u < l.interfering.size(); ++u) {
            const double su = l.interfering[u];
            const double denom = su * rho + sk;
            f += a[k] * b[u] * (n * denom + sk * su * p) / (denom * denom) * decay;
        }
    }
    return std::max(f / p, 0.0);
}

namespace {

struct SinrAxis {
    double lower;
    double upper;
};

// Truncation points for integrals against sinr_pdf: below lower the density
// contributes O((lower/scale)^2), beyond upper it is either exponentially
// small or carries less than 1e-15 of the 1/rho^2 tail.
SinrAxis sinr_axis(const UserLink& l, const LinkBudget& budget)
{
    const double p = budget.power;
    const double n = budget.noise_variance;
    const double s_max = max_of(l.serving);
    const double mean_sinr = sum_of(l.serving) * p / (n + sum_of(l.interfering) * p);
    const double ratio = s_max / min_of(l.interfering);
    const double lower = kLowerCut * std::min(mean_sinr, ratio);
    const double upper = std::min(1e15 * std::max({1.0, mean_sinr, ratio}), kDecayLengths * s_max * p / n);
    return {lower, std::max(upper, 2.0 * lower)};
}

} // namespace

double integrate_sinr_pdf(const UserLink& link, const LinkBudget& budget, double upper, const EvalPolicy& policy)
{
    if (link.serving.empty() || link.interfering.empty())
        throw std::invalid_argument("integrate_sinr_pdf: needs serving and interfering ports");
    require_positive_gains(link.serving, "integrate_sinr_pdf");
    require_positive_gains(link.interfering, "integrate_sinr_pdf");
    budget.validate();
    const UserLink l = prepared(link, policy);
    SinrAxis axis = sinr_axis(l, budget);
    if (upper <= axis.lower)
        return 0.0;
    axis.upper = std::min(axis.upper, upper);
    const auto f = [&](double rho) { return sinr_pdf(rho, l, budget, policy); };
    return integrate_log_scale(f, axis.lower, axis.upper, policy.quadrature_rel_tol).value;
}

UserRate ergodic_user_rate_closed(const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy)
{
    if (!link.active())
        return {0.0, RateMethod::closed_form};
    require_positive_gains(link.serving, "ergodic_user_rate_closed");
    require_positive_gains(link.interfering, "ergodic_user_rate_closed");
    budget.validate();

    const UserLink l = prepared(link, policy);
    const ClosedTerms terms = l.interfering.empty() ? closed_single_user(l, budget) : closed_interference(l, budget);
    if (terms.worst <= policy.conditioning_threshold && std::isfinite(terms.rate))
        return {std::max(terms.rate, 0.0), RateMethod::closed_form};

    try {
        return {ergodic_user_rate_laplace(link, budget, policy), RateMethod::quadrature};
    } catch (const std::runtime_error&) {
        return {ergodic_user_rate_monte_carlo(link, budget, policy), RateMethod::monte_carlo_fallback};
    }
}

UserRateBreakdown ergodic_sum_rate_closed(const TransmissionMode& mode, const PathlossMatrix& gains,
                                          const LinkBudget& budget, const EvalPolicy& policy)
{
    if (mode.n_ports() != gains.ports())
        throw std::invalid_argument("mode " + mode.to_string() + " has " + std::to_string(mode.n_ports()) +
                                    " ports but the gain matrix has " + std::to_string(gains.ports()));
    if (gains.users() == 0)
        throw std::invalid_argument("gain matrix has no users");
    const ModeGroups groups = derive_groups(mode, gains.users());

    UserRateBreakdown out;
    out.per_user_rates.assign(gains.users(), 0.0);
    for (std::size_t i = 0; i < gains.users(); ++i) {
        if (!groups.is_active(i))
            continue;
        const UserRate r = ergodic_user_rate_closed(user_link(groups, i, gains.row(i)), budget, policy);
        out.per_user_rates[i] = r.rate;
        out.method = std::max(out.method, r.method);
    }
    out.sum_rate = std::accumulate(out.per_user_rates.begin(), out.per_user_rates.end(), 0.0);
    return out;
}

double ergodic_user_rate_quadrature(const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy)
{
    if (!link.active())
        return 0.0;
    require_positive_gains(link.serving, "ergodic_user_rate_quadrature");
    require_positive_gains(link.interfering, "ergodic_user_rate_quadrature");
    budget.validate();

    const double p = budget.power;
    const double n = budget.noise_variance;
    const UserLink l = prepared(link, policy);
    const double tol = policy.quadrature_rel_tol;

    if (l.interfering.empty()) {
        // integrate over received desired power x
        const auto f = [&](double x) { return std::log2(1.0 + x / n) * signal_pdf(x, l.serving, p); };
        const double lower = kLowerCut * min_of(l.serving) * p;
        const double upper = kDecayLengths * max_of(l.serving) * p;
        return integrate_log_scale(f, lower, upper, tol).value;
    }

    const SinrAxis axis = sinr_axis(l, budget);
    const auto f = [&](double rho) { return std::log2(1.0 + rho) * sinr_pdf(rho, l, budget, policy); };
    return integrate_log_scale(f, axis.lower, axis.upper, tol).value;
}

double ergodic_user_rate_laplace(const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy)
{
    if (!link.active())
        return 0.0;
    require_positive_gains(link.serving, "ergodic_user_rate_laplace");
    require_positive_gains(link.interfering, "ergodic_user_rate_laplace");
    budget.validate();

    const double p = budget.power;
    const double n = budget.noise_variance;
    std::vector<double> sig(link.serving.size());
    std::vector<double> intf(link.interfering.size());
    std::transform(link.serving.begin(), link.serving.end(), sig.begin(), [p](double s) { return s * p; });
    std::transform(link.interfering.begin(), link.interfering.end(), intf.begin(), [p](double s) { return s * p; });

    double largest = max_of(sig);
    if (!intf.empty())
        largest = std::max(largest, max_of(intf));
    const double knee = std::min(1.0 / n, 1.0 / largest);
    const double lower = kLowerCut * knee;
    const double upper = kDecayLengths / n;

    // integrand over s of exp(-n s)/s * L_Y(s) (1 - L_X(s)); the 1/s is absorbed by the log map
    const auto f = [&](double s) {
        return std::exp(-n * s) * laplace(intf, s) * one_minus_laplace(sig, s) / s;
    };
    return integrate_log_scale(f, lower, upper, policy.quadrature_rel_tol).value / kLn2;
}

double ergodic_user_rate_monte_carlo(const UserLink& link, const LinkBudget& budget, const EvalPolicy& policy)
{
    if (!link.active())
        return 0.0;
    budget.validate();
    RngStream rng(policy.fallback_seed, 0);
    double acc = 0.0;
    for (std::size_t r = 0; r < policy.fallback_realizations; ++r) {
        double signal = 0.0;
        for (double s : link.serving)
            signal += s * budget.power * rng.exponential();
        double interference = budget.noise_variance;
        for (double s : link.interfering)
            interference += s * budget.power * rng.exponential();
        acc += std::log2(1.0 + signal / interference);
    }
    return acc / static_cast<double>(policy.fallback_realizations);
}

} // namespace das
