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

#include "das/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "das/quadrature.hpp"

namespace das {

namespace {

// Reported in place of a measurement that could not be made.
constexpr double kFailed = 1e300;

struct Instance {
    UserLink link;
    LinkBudget budget;
};

// Smallest pairwise relative gap among all gains of the link.
double min_relative_gap(const UserLink& link)
{
    std::vector<double> all = link.serving;
    all.insert(all.end(), link.interfering.begin(), link.interfering.end());
    std::sort(all.begin(), all.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < all.size(); ++i)
        gap = std::min(gap, (all[i] - all[i - 1]) / all[i]);
    return gap;
}

// Random user of a random mode in a random drop, with distinct gains.
Instance random_instance(RngStream& rng, bool need_interference)
{
    for (;;) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 3);
        const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * n);
        const CellLayout layout = CellLayout::canonical(n);
        const auto users = sample_uniform_users(k, layout.cell_radius, rng);
        const PathlossMatrix gains = build_pathloss_matrix(users, layout);
        const CandidateSet modes = enumerate_ideal(n, k);
        const auto& mode = modes.modes()[static_cast<std::size_t>(rng.uniform() * modes.size())];
        const ModeGroups groups = derive_groups(mode, k);
        const std::size_t user = static_cast<std::size_t>(rng.uniform() * k);
        if (!groups.is_active(user))
            continue;
        UserLink link = user_link(groups, user, gains.row(user));
        if (need_interference && link.interfering.empty())
            continue;
        if (min_relative_gap(link) < 1e-2)
            continue;
        const double snr_db = -10.0 + 50.0 * rng.uniform();
        return {std::move(link), LinkBudget::from_snr_db(snr_db)};
    }
}

std::string describe(const Instance& inst)
{
    std::ostringstream os;
    os.precision(6);
    os << "serving{";
    for (double s : inst.link.serving)
        os << ' ' << s;
    os << " } interfering{";
    for (double s : inst.link.interfering)
        os << ' ' << s;
    os << " } snr_db " << inst.budget.snr_db();
    return os.str();
}

CheckResult check_counts(const ExperimentSpec& spec)
{
    CheckResult r{"counts", true, 0.0, 0.0, ""};
    std::ostringstream detail;
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t k = 1; k <= 5; ++k) {
            if (n != k && (n > 4 || k > 4))
                continue;
            const auto set = enumerate_ideal(n, k, spec.max_candidates);
            if (set.size() != ideal_count(n, k)) {
                r.measured += 1;
                detail << "ideal(" << n << ',' << k << ")=" << set.size() << " ";
            }
        }
    }
    RngStream rng(spec.seed, 0xc0);
    for (std::size_t n = 1; n <= 5; ++n) {
        const CellLayout layout = CellLayout::canonical(n);
        for (;;) {
            const auto users = sample_uniform_users(n, layout.cell_radius, rng);
            const Matrix d = distance_matrix(users, layout.ports);
            if (n > 1 && nearest_user_mode(d).active_users() < 2)
                continue;
            const auto set = generate_min_distance_candidates(d);
            if (set.size() != proposed_count(n)) {
                r.measured += 1;
                detail << "proposed(" << n << ")=" << set.size() << " ";
            }
            break;
        }
    }
    r.passed = r.measured == 0.0;
    r.detail = r.passed ? "ideal sizes match (K+1)^N-K(2^N-2)-1; proposed sizes match 2^N-N" : detail.str();
    return r;
}

CheckResult check_normalization(const ExperimentSpec& spec)
{
    CheckResult r{"normalization", true, 0.0, 1e-6, ""};
    RngStream rng(spec.seed, 0xa1);
    std::string worst;
    for (std::size_t t = 0; t < spec.instances; ++t) {
        const Instance inst = random_instance(rng, true);
        double err = 0.0;
        try {
            const double mass =
                integrate_sinr_pdf(inst.link, inst.budget, std::numeric_limits<double>::infinity(), spec.policy);
            err = std::fabs(mass - 1.0);
        } catch (const QuadratureError&) {
            err = kFailed;
        }
        if (err > r.measured) {
            r.measured = err;
            worst = describe(inst);
        }
    }
    r.passed = r.measured <= r.tolerance;
    r.detail = "max |mass - 1| over " + std::to_string(spec.instances) + " instances; worst " + worst;
    return r;
}

CheckResult check_oracle_equivalence(const ExperimentSpec& spec)
{
    CheckResult r{"oracle_equivalence", true, 0.0, 1e-6, ""};
    RngStream rng(spec.seed, 0xa2);
    std::string worst;
    for (std::size_t t = 0; t < spec.instances; ++t) {
        const Instance inst = random_instance(rng, t % 4 != 0);
        const double closed = ergodic_user_rate_closed(inst.link, inst.budget, spec.policy).rate;
        double err = 0.0;
        try {
            const double quad = ergodic_user_rate_quadrature(inst.link, inst.budget, spec.policy);
            err = std::fabs(closed - quad) / quad;
        } catch (const QuadratureError&) {
            err = kFailed;
        }
        if (err > r.measured) {
            r.measured = err;
            worst = describe(inst);
        }
    }
    r.passed = r.measured <= r.tolerance;
    r.detail = "max relative |closed - quadrature| over " + std::to_string(spec.instances) + " instances; worst " +
               worst;
    return r;
}

CheckResult check_dominance(const ExperimentSpec& spec)
{
    CheckResult r{"dominance", true, 0.0, 0.0, ""};
    RngStream rng(spec.seed, 0xa3);
    for (std::size_t t = 0; t < spec.instances; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 4);
        const CellLayout layout = CellLayout::canonical(n);
        const auto users = sample_uniform_users(1, layout.cell_radius, rng);
        const PathlossMatrix gains = build_pathloss_matrix(users, layout);
        const LinkBudget budget = LinkBudget::from_snr_db(-10.0 + 50.0 * rng.uniform());

        // port 1 always serves; each other port joins with probability 0.6
        UserLink bigger;
        bigger.serving.push_back(gains(0, 0));
        for (std::size_t j = 1; j < n; ++j)
            if (rng.uniform() < 0.6)
                bigger.serving.push_back(gains(0, j));
        if (bigger.serving.size() < 2)
            bigger.serving.push_back(gains(0, n - 1));
        UserLink smaller = bigger;
        smaller.serving.erase(smaller.serving.begin() +
                              static_cast<long>(rng.uniform() * static_cast<double>(smaller.serving.size())));

        const double big = ergodic_user_rate_closed(bigger, budget, spec.policy).rate;
        const double small = ergodic_user_rate_closed(smaller, budget, spec.policy).rate;
        if (small > big * (1.0 + 1e-12))
            r.measured += 1;
    }
    r.passed = r.measured == 0.0;
    r.detail = "serving-set subsets with a higher single-user rate, out of " + std::to_string(spec.instances);
    return r;
}

CheckResult check_mc_agreement(const ExperimentSpec& spec)
{
    CheckResult r{"mc_agreement", true, 0.0, 0.95, ""};
    const CellLayout layout = CellLayout::canonical(2, spec.cell_radius, spec.pathloss_exponent);
    const PathlossMatrix gains = build_pathloss_matrix(reference_two_user_positions(), layout);
    const CandidateSet modes = enumerate_ideal(2, 2);
    const std::vector<double> grid{0, 10, 20, 30, 40};
    std::size_t inside = 0;
    std::size_t total = 0;
    for (std::size_t m = 0; m < modes.size(); ++m) {
        for (std::size_t s = 0; s < grid.size(); ++s) {
            const LinkBudget budget = LinkBudget::from_snr_db(grid[s]);
            const double closed = ergodic_sum_rate_closed(modes.modes()[m], gains, budget, spec.policy).sum_rate;
            const McEstimate mc = mc_ergodic_sum_rate(modes.modes()[m], gains, budget,
                                                      McConfig{spec.effective_realizations(), spec.seed,
                                                               0xb000 + m * grid.size() + s});
            inside += std::fabs(closed - mc.mean) < 3.0 * mc.std_error;
            ++total;
        }
    }
    r.measured = static_cast<double>(inside) / static_cast<double>(total);
    r.passed = r.measured >= r.tolerance;
    r.detail = std::to_string(inside) + "/" + std::to_string(total) +
               " (mode, SNR) cells within 3 standard errors, reference two-user geometry";
    return r;
}

CheckResult check_conditioning(const ExperimentSpec& spec)
{
    // The spread ties give partial-fraction coefficients near 1/tie_epsilon,
    // which amplify rounding in the exp-E1 terms to roughly 1e-5 relative.
    CheckResult r{"conditioning", true, 0.0, 1e-4, ""};
    // user 1 is exactly 5 away from both ports, so its two gains coincide
    const CellLayout layout = CellLayout::canonical(2);
    const PathlossMatrix gains = build_pathloss_matrix(std::vector<Position>{{0.0, 3.0}, {3.0, 4.5}}, layout);
    const LinkBudget budget = LinkBudget::from_snr_db(20.0);
    std::ostringstream detail;
    bool fallback_seen = false;
    bool closed_seen = false;
    for (const char* text : {"[1,2]", "[1,1]"}) {
        const TransmissionMode mode = TransmissionMode::parse(text);
        const ModeGroups groups = derive_groups(mode, 2);
        const UserLink link = user_link(groups, 0, gains.row(0));
        const UserRate got = ergodic_user_rate_closed(link, budget, spec.policy);
        const double oracle = ergodic_user_rate_laplace(link, budget, spec.policy);
        const double err = std::fabs(got.rate - oracle) / oracle;
        r.measured = std::max(r.measured, std::isfinite(err) ? err : kFailed);
        fallback_seen |= got.method != RateMethod::closed_form;
        closed_seen |= got.method == RateMethod::closed_form;
        detail << text << ':' << to_string(got.method) << ' ';
    }
    detail << (fallback_seen ? "fallback engaged" : "tie perturbation kept the closed form");
    const bool route_ok = spec.policy.perturb_ties ? !fallback_seen : !closed_seen;
    r.passed = route_ok && r.measured <= r.tolerance;
    r.detail = detail.str();
    return r;
}

const std::map<std::string, std::function<CheckResult(const ExperimentSpec&)>>& registry()
{
    static const std::map<std::string, std::function<CheckResult(const ExperimentSpec&)>> checks{
        {"counts", check_counts},
        {"normalization", check_normalization},
        {"oracle_equivalence", check_oracle_equivalence},
        {"dominance", check_dominance},
        {"mc_agreement", check_mc_agreement},
        {"conditioning", check_conditioning},
    };
    return checks;
}

} // namespace

std::vector<std::string> available_checks()
{
    return {"counts", "normalization", "oracle_equivalence", "dominance", "mc_agreement", "conditioning"};
}

std::vector<CheckResult> run_validation(const ExperimentSpec& spec)
{
    spec.validate();
    const std::vector<std::string> selected = spec.checks.value_or(available_checks());
    for (const auto& name : selected)
        if (!registry().contains(name))
            throw ConfigError("unknown check '" + name + "'");

    std::vector<CheckResult> results;
    for (const auto& name : selected) {
        try {
            results.push_back(registry().at(name)(spec));
        } catch (const std::exception& e) {
            results.push_back({name, false, kFailed, 0.0, std::string("error: ") + e.what()});
        }
    }
    return results;
}

} // namespace das
