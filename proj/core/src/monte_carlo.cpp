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

#include "das/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace das {

FadingDraw sample_fading(std::size_t k_users, std::size_t n_ports, RngStream& rng)
{
    if (k_users == 0 || n_ports == 0)
        throw std::invalid_argument("sample_fading: dimensions must be positive");
    FadingDraw draw{Matrix(k_users, n_ports)};
    for (std::size_t i = 0; i < k_users; ++i)
        for (std::size_t j = 0; j < n_ports; ++j)
            draw.power_gains(i, j) = rng.exponential();
    return draw;
}

std::vector<FadingDraw> sample_fading_batch(std::size_t count, std::size_t k_users, std::size_t n_ports,
                                            RngStream& rng)
{
    std::vector<FadingDraw> draws;
    draws.reserve(count);
    for (std::size_t r = 0; r < count; ++r)
        draws.push_back(sample_fading(k_users, n_ports, rng));
    return draws;
}

double instantaneous_user_rate(std::size_t user, const ModeGroups& groups, std::span<const double> gains_row,
                               std::span<const double> draw_row, const LinkBudget& budget)
{
    if (user >= groups.users())
        throw std::invalid_argument("instantaneous_user_rate: user index out of range");
    if (!groups.is_active(user))
        return 0.0;
    double signal = 0.0;
    for (std::size_t k : groups.serving_sets[user])
        signal += gains_row[k] * budget.power * draw_row[k];
    double interference = budget.noise_variance;
    for (std::size_t l : groups.interference_sets[user])
        interference += gains_row[l] * budget.power * draw_row[l];
    return std::log2(1.0 + signal / interference);
}

void McConfig::validate() const
{
    if (realizations < 2)
        throw std::invalid_argument("Monte Carlo needs at least 2 realizations");
}

McEstimate summarize(std::span<const double> samples)
{
    McEstimate e;
    e.realizations = samples.size();
    if (samples.empty())
        return e;
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    e.mean = sum / static_cast<double>(samples.size());
    if (samples.size() < 2)
        return e;
    double ss = 0.0;
    for (double x : samples)
        ss += (x - e.mean) * (x - e.mean);
    const double n = static_cast<double>(samples.size());
    e.std_error = std::sqrt(ss / (n - 1.0) / n);
    return e;
}

McEstimate mc_ergodic_sum_rate(const TransmissionMode& mode, const PathlossMatrix& gains, const LinkBudget& budget,
                               const McConfig& config)
{
    config.validate();
    RngStream rng(config.seed, config.stream_id);
    const auto draws = sample_fading_batch(config.realizations, gains.users(), gains.ports(), rng);
    return mc_ergodic_sum_rate(mode, gains, budget, draws);
}

McEstimate mc_ergodic_sum_rate(const TransmissionMode& mode, const PathlossMatrix& gains, const LinkBudget& budget,
                               std::span<const FadingDraw> draws)
{
    return mc_ergodic_sum_rate_grid(mode, gains, std::span<const LinkBudget>(&budget, 1), draws).front();
}

std::vector<McEstimate> mc_ergodic_sum_rate_grid(const TransmissionMode& mode, const PathlossMatrix& gains,
                                                 std::span<const LinkBudget> budgets,
                                                 std::span<const FadingDraw> draws)
{
    if (mode.n_ports() != gains.ports())
        throw std::invalid_argument("mode and gain matrix disagree on the number of ports");
    for (const auto& b : budgets)
        b.validate();
    const ModeGroups groups = derive_groups(mode, gains.users());
    const std::size_t k = gains.users();

    // per-user desired and interfering power at P = 1, reused across SNR points
    std::vector<std::vector<double>> samples(budgets.size(), std::vector<double>(draws.size()));
    std::vector<double> signal(k);
    std::vector<double> interference(k);
    for (std::size_t r = 0; r < draws.size(); ++r) {
        const Matrix& h = draws[r].power_gains;
        if (h.rows() != k || h.cols() != gains.ports())
            throw std::invalid_argument("fading draw has the wrong shape");
        for (std::size_t i = 0; i < k; ++i) {
            signal[i] = 0.0;
            interference[i] = 0.0;
            for (std::size_t j : groups.serving_sets[i])
                signal[i] += gains(i, j) * h(i, j);
            for (std::size_t j : groups.interference_sets[i])
                interference[i] += gains(i, j) * h(i, j);
        }
        for (std::size_t s = 0; s < budgets.size(); ++s) {
            const double p = budgets[s].power;
            const double n = budgets[s].noise_variance;
            double total = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                if (groups.is_active(i))
                    total += std::log2(1.0 + p * signal[i] / (n + p * interference[i]));
            samples[s][r] = total;
        }
    }

    std::vector<McEstimate> out;
    out.reserve(budgets.size());
    for (const auto& s : samples)
        out.push_back(summarize(s));
    return out;
}

Selection select_best_mode(const CandidateSet& candidates, const PathlossMatrix& gains, const LinkBudget& budget,
                           RateEstimator estimator, const std::optional<McConfig>& mc_config,
                           const EvalPolicy& policy)
{
    if (candidates.empty())
        throw std::invalid_argument("select_best_mode: empty candidate set");
    if (estimator == RateEstimator::monte_carlo) {
        const McConfig config = mc_config.value_or(McConfig{});
        config.validate();
        RngStream rng(config.seed, config.stream_id);
        const auto draws = sample_fading_batch(config.realizations, gains.users(), gains.ports(), rng);
        return select_best_mode(candidates, gains, budget, draws);
    }

    Selection best;
    bool first = true;
    for (std::size_t m = 0; m < candidates.size(); ++m) {
        const double rate = ergodic_sum_rate_closed(candidates.modes()[m], gains, budget, policy).sum_rate;
        if (first || rate > best.rate) {
            best = {candidates.modes()[m], rate, m};
            first = false;
        }
    }
    return best;
}

Selection select_best_mode(const CandidateSet& candidates, const PathlossMatrix& gains, const LinkBudget& budget,
                           std::span<const FadingDraw> draws)
{
    if (candidates.empty())
        throw std::invalid_argument("select_best_mode: empty candidate set");
    if (draws.size() < 2)
        throw std::invalid_argument("select_best_mode: Monte Carlo needs at least 2 draws");
    Selection best;
    for (std::size_t m = 0; m < candidates.size(); ++m) {
        const double rate = mc_ergodic_sum_rate(candidates.modes()[m], gains, budget, draws).mean;
        if (m == 0 || rate > best.rate)
            best = {candidates.modes()[m], rate, m};
    }
    return best;
}

std::string to_string(Selector selector)
{
    switch (selector) {
    case Selector::proposed_closed_form:
        return "proposed_closed_form";
    case Selector::ideal_exhaustive_mc:
        return "ideal_exhaustive_mc";
    case Selector::ideal_exhaustive_closed:
        return "ideal_exhaustive_closed";
    case Selector::fixed_mode:
        return "fixed_mode";
    }
    return "unknown";
}

void DropExperimentConfig::validate() const
{
    if (n_ports == 0 || k_users == 0)
        throw std::invalid_argument("experiment needs at least one port and one user");
    if (snr_grid_db.empty())
        throw std::invalid_argument("experiment needs a non-empty SNR grid");
    for (double s : snr_grid_db)
        if (!std::isfinite(s))
            throw std::invalid_argument("SNR grid values must be finite");
    if (drops == 0)
        throw std::invalid_argument("experiment needs at least one drop");
    mc.validate();
    policy.validate();
    if (selector == Selector::fixed_mode) {
        if (!fixed_mode)
            throw std::invalid_argument("fixed_mode selector needs a mode");
        if (fixed_mode->n_ports() != n_ports)
            throw std::invalid_argument("fixed mode " + fixed_mode->to_string() + " does not have " +
                                        std::to_string(n_ports) + " ports");
        fixed_mode->validate(k_users);
    }
}

namespace {

struct DropResult {
    std::vector<double> rates;
    std::vector<double> mc_std_errors;
};

class DropEvaluator {
public:
    DropEvaluator(const DropExperimentConfig& config, const CellLayout& layout)
        : config_(config), layout_(layout)
    {
        for (double snr : config.snr_grid_db)
            budgets_.push_back(LinkBudget::from_snr_db(snr));
        if (config.selector == Selector::ideal_exhaustive_mc || config.selector == Selector::ideal_exhaustive_closed)
            shared_ = enumerate_ideal(config.n_ports, config.k_users, config.max_candidates);
        else if (config.selector == Selector::fixed_mode) {
            shared_ = CandidateSet(CandidateProvenance::ideal);
            shared_->insert(*config.fixed_mode);
        }
    }

    DropResult operator()(std::size_t drop) const
    {
        RngStream rng(config_.mc.seed, drop);
        const auto users =
            sample_uniform_users(config_.k_users, layout_.cell_radius, rng, layout_.ports, config_.exclusion_radius);
        const PathlossMatrix gains = build_pathloss_matrix(users, layout_);

        std::optional<CandidateSet> local;
        if (config_.selector == Selector::proposed_closed_form)
            local = generate_min_distance_candidates(distance_matrix(users, layout_.ports), config_.max_candidates);
        const CandidateSet& candidates = local ? *local : *shared_;

        DropResult out;
        out.rates.assign(budgets_.size(), 0.0);
        out.mc_std_errors.assign(budgets_.size(), 0.0);

        if (config_.selector != Selector::ideal_exhaustive_mc) {
            for (std::size_t s = 0; s < budgets_.size(); ++s)
                out.rates[s] =
                    select_best_mode(candidates, gains, budgets_[s], RateEstimator::closed_form, std::nullopt,
                                     config_.policy)
                        .rate;
            return out;
        }

        const auto draws = sample_fading_batch(config_.mc.realizations, config_.k_users, config_.n_ports, rng);
        bool first = true;
        for (const auto& mode : candidates) {
            const auto est = mc_ergodic_sum_rate_grid(mode, gains, budgets_, draws);
            for (std::size_t s = 0; s < budgets_.size(); ++s) {
                if (first || est[s].mean > out.rates[s]) {
                    out.rates[s] = est[s].mean;
                    out.mc_std_errors[s] = est[s].std_error;
                }
            }
            first = false;
        }
        return out;
    }

private:
    const DropExperimentConfig& config_;
    const CellLayout& layout_;
    std::vector<LinkBudget> budgets_;
    std::optional<CandidateSet> shared_;
};

std::vector<DropResult> run_drops(const DropExperimentConfig& config, const CellLayout& layout)
{
    config.validate();
    layout.validate();
    if (layout.n_ports() != config.n_ports)
        throw std::invalid_argument("layout has " + std::to_string(layout.n_ports()) + " ports, experiment expects " +
                                    std::to_string(config.n_ports));

    const DropEvaluator evaluate(config, layout);
    std::vector<DropResult> results(config.drops);

    std::size_t threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, config.drops);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t d = next.fetch_add(1);
            if (d >= config.drops)
                return;
            try {
                results[d] = evaluate(d);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = config.drops;
                return;
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

} // namespace

std::vector<std::vector<double>> drop_rates(const DropExperimentConfig& config, const CellLayout& layout)
{
    auto results = run_drops(config, layout);
    std::vector<std::vector<double>> out;
    out.reserve(results.size());
    for (auto& r : results)
        out.push_back(std::move(r.rates));
    return out;
}

std::vector<CurveRow> cell_average_experiment(const DropExperimentConfig& config, const CellLayout& layout)
{
    const auto results = run_drops(config, layout);
    std::string label = to_string(config.selector);
    if (config.selector == Selector::fixed_mode)
        label += ':' + config.fixed_mode->to_string();
    const std::size_t realizations = config.selector == Selector::ideal_exhaustive_mc ? config.mc.realizations : 0;

    std::vector<CurveRow> rows;
    std::vector<double> column(results.size());
    for (std::size_t s = 0; s < config.snr_grid_db.size(); ++s) {
        for (std::size_t d = 0; d < results.size(); ++d)
            column[d] = results[d].rates[s];
        const McEstimate e = summarize(column);
        CurveRow row;
        row.snr_db = config.snr_grid_db[s];
        row.selector = label;
        row.mean_sum_rate = e.mean;
        row.std_error = results.size() > 1 ? e.std_error : results.front().mc_std_errors[s];
        row.drops = config.drops;
        row.realizations = realizations;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace das
