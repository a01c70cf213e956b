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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "das/geometry.hpp"
#include "das/mode_space.hpp"
#include "das/random.hpp"
#include "das/rate_analysis.hpp"

namespace das {

/// One small-scale fading realisation: entry (i, j) is |h_ij|^2 for user i, port j.
struct FadingDraw {
    Matrix power_gains;
};

/// |h|^2 of a unit-variance complex Gaussian is a unit-mean exponential, so
/// the power gains are drawn directly (row-major, one exponential each).
FadingDraw sample_fading(std::size_t k_users, std::size_t n_ports, RngStream& rng);

std::vector<FadingDraw> sample_fading_batch(std::size_t count, std::size_t k_users, std::size_t n_ports,
                                            RngStream& rng);

/// log2(1 + sum_{G_i} S P |h|^2 / (noise + sum_{G_i^RC} S P |h|^2)); 0 for an inactive user.
double instantaneous_user_rate(std::size_t user, const ModeGroups& groups, std::span<const double> gains_row,
                               std::span<const double> draw_row, const LinkBudget& budget);

struct McConfig {
    std::size_t realizations = 5000;
    std::uint64_t seed = 1;
    std::uint64_t stream_id = 0;

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t realizations = 0;
};

/// Sample mean and standard error (sample std / sqrt(n)) of a sequence.
McEstimate summarize(std::span<const double> samples);

/// Ergodic sum rate estimated over config.realizations fresh fading draws
/// from stream (config.seed, config.stream_id).
McEstimate mc_ergodic_sum_rate(const TransmissionMode& mode, const PathlossMatrix& gains, const LinkBudget& budget,
                               const McConfig& config);

/// Same estimator over caller-supplied draws (common random numbers).
McEstimate mc_ergodic_sum_rate(const TransmissionMode& mode, const PathlossMatrix& gains, const LinkBudget& budget,
                               std::span<const FadingDraw> draws);

/// Ergodic sum rate of one mode on several SNR points over the same draws;
/// entry s belongs to budgets[s].
std::vector<McEstimate> mc_ergodic_sum_rate_grid(const TransmissionMode& mode, const PathlossMatrix& gains,
                                                 std::span<const LinkBudget> budgets,
                                                 std::span<const FadingDraw> draws);

enum class RateEstimator { closed_form, monte_carlo };

struct Selection {
    TransmissionMode mode;
    double rate = 0.0;
    std::size_t index = 0; // position in the candidate set
};

/// Mode with the highest ergodic sum rate; the first one wins exact ties.
/// The Monte Carlo estimator draws once from mc_config and reuses the draws
/// for every candidate. Throws std::invalid_argument on an empty set.
Selection select_best_mode(const CandidateSet& candidates, const PathlossMatrix& gains, const LinkBudget& budget,
                           RateEstimator estimator, const std::optional<McConfig>& mc_config = std::nullopt,
                           const EvalPolicy& policy = {});

/// Monte Carlo selection over caller-supplied draws.
Selection select_best_mode(const CandidateSet& candidates, const PathlossMatrix& gains, const LinkBudget& budget,
                           std::span<const FadingDraw> draws);

enum class Selector { proposed_closed_form, ideal_exhaustive_mc, ideal_exhaustive_closed, fixed_mode };

std::string to_string(Selector selector);

struct DropExperimentConfig {
    std::size_t n_ports = 2;
    std::size_t k_users = 2;
    std::vector<double> snr_grid_db;
    std::size_t drops = 4000;
    /// realizations and seed; drop d always uses stream (seed, d).
    McConfig mc;
    Selector selector = Selector::proposed_closed_form;
    std::optional<TransmissionMode> fixed_mode;
    EvalPolicy policy;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
    double exclusion_radius = 0.0;
    std::uint64_t max_candidates = kDefaultCandidateCap;

    void validate() const;
};

struct CurveRow {
    double snr_db = 0.0;
    std::string selector;
    double mean_sum_rate = 0.0;
    double std_error = 0.0;
    std::size_t drops = 0;
    std::size_t realizations = 0;
};

/// Per-drop rates of the selected mode on every grid point; entry [d][s].
///
/// Each drop draws its users and then its fading realisations from stream
/// (seed, d), so results do not depend on the thread count or schedule.
/// Closed-form selectors report the closed-form rate of their chosen mode;
/// the Monte Carlo selector reports the sample mean it selected on. Fading is
/// only drawn when the selector needs it.
std::vector<std::vector<double>> drop_rates(const DropExperimentConfig& config, const CellLayout& layout);

/// Cell-averaged ergodic sum rate curve: mean and standard error over drops
/// for each SNR point. With a single drop, the standard error is the Monte
/// Carlo one (zero for closed-form selectors).
std::vector<CurveRow> cell_average_experiment(const DropExperimentConfig& config, const CellLayout& layout);

} // namespace das
