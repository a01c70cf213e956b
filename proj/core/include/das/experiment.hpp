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
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "das/geometry.hpp"
#include "das/mode_space.hpp"
#include "das/monte_carlo.hpp"
#include "das/rate_analysis.hpp"
#include "das/table.hpp"

namespace das {

enum class Scenario { rate_curve, cell_average, modes, validate };
enum class OutputFormat { csv, json };

/// Process exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_numerical_failure = 3,
    exit_validation_failure = 4,
};

/// Invalid or inconsistent experiment description.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One experiment, as read from a config file and command-line overrides.
/// Defaults are the reference setup: p = 3, cell radius sqrt(112/3),
/// 5000 realizations, 4000 drops, SNR 0:5:50 dB, unit noise variance.
struct ExperimentSpec {
    Scenario scenario = Scenario::cell_average;
    std::size_t n_ports = 2;
    std::size_t k_users = 2;
    double cell_radius = kDefaultCellRadius;
    double pathloss_exponent = kDefaultPathlossExponent;
    /// Overrides the canonical ring when set.
    std::optional<std::vector<Position>> ports;
    /// Fixed user positions (rate_curve, modes).
    std::vector<Position> users;
    std::vector<double> snr_grid_db = default_snr_grid();
    /// proposed | ideal | ideal-mc | fixed:[..] | fixed-all
    std::vector<std::string> selectors = {"proposed", "ideal"};
    std::uint64_t seed = 1;
    std::size_t drops = 4000;
    std::size_t realizations = 5000;
    bool desk_scale = false;
    std::size_t threads = 0;
    double exclusion_radius = 0.0;
    std::uint64_t max_candidates = kDefaultCandidateCap;
    EvalPolicy policy;
    /// validate: which checks to run; nullopt runs all of them.
    std::optional<std::vector<std::string>> checks;
    /// validate: random instances per check.
    std::size_t instances = 100;
    OutputFormat format = OutputFormat::csv;
    std::string out;

    static std::vector<double> default_snr_grid();

    /// Drops and realizations after the desk-scale preset (divide by 20).
    std::size_t effective_drops() const;
    std::size_t effective_realizations() const;

    CellLayout layout() const;

    /// Throws ConfigError.
    void validate() const;
};

/// Reads the keys of a JSON config object into spec; unknown keys are rejected.
void apply_config(ExperimentSpec& spec, const nlohmann::json& config);

/// Parses "0,10,20", "0:5:50" (inclusive start:step:stop) or a mix of both.
std::vector<double> parse_snr_list(const std::string& text);

/// One selector expanded into the monte_carlo configuration it stands for.
struct SelectorChoice {
    Selector selector;
    std::optional<TransmissionMode> fixed_mode;
};
std::vector<SelectorChoice> expand_selectors(const ExperimentSpec& spec);

/// Reference two-user geometry: users at (-2.5, -2) and (3, 4.5).
std::vector<Position> reference_two_user_positions();

/// rate-curve: snr_db,mode,closed_form_rate,mc_rate,mc_std_error for every
/// ideal candidate (mode-major, SNR-minor). Mode m uses fading stream (seed, m).
Table rate_curve_table(const ExperimentSpec& spec);

/// cell-average: snr_db,selector,mean_sum_rate,std_error,drops,realizations.
Table cell_average_table(const ExperimentSpec& spec);

/// modes: set,size,formula_size,index,mode. The proposed set uses the fixed
/// users when given, otherwise one uniform drop from stream (seed, 0).
Table modes_table(const ExperimentSpec& spec);

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

std::vector<std::string> available_checks();

/// Runs the selected checks; never stops at the first failure.
std::vector<CheckResult> run_validation(const ExperimentSpec& spec);

/// validate: check,status,measured,tolerance,detail.
Table validation_table(const std::vector<CheckResult>& results);

std::string serialize(const Table& table, OutputFormat format);

} // namespace das
