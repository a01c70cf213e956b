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

// dasim: reproducible experiments for distributed antenna system mode selection.
//
//   dasim rate-curve   [--config f] [--snr 0:5:50] [--realizations n] ...
//   dasim cell-average [--selector proposed --selector ideal ...] [--desk-scale]
//   dasim modes        [--n-ports N --k-users K]
//   dasim validate     [--checks counts,normalization,...]

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "das/experiment.hpp"
#include "das/quadrature.hpp"

namespace {

struct Flags {
    std::string config;
    std::uint64_t seed = 0;
    std::string snr;
    std::size_t drops = 0;
    std::size_t realizations = 0;
    std::vector<std::string> selectors;
    std::string format;
    std::string out;
    bool desk_scale = false;
    std::size_t threads = 0;
    std::size_t n_ports = 0;
    std::size_t k_users = 0;
    std::string checks;
    bool no_tie_perturbation = false;
    std::size_t instances = 0;
};

struct Options {
    CLI::Option* seed;
    CLI::Option* snr;
    CLI::Option* drops;
    CLI::Option* realizations;
    CLI::Option* selectors;
    CLI::Option* format;
    CLI::Option* out;
    CLI::Option* threads;
    CLI::Option* n_ports;
    CLI::Option* k_users;
    CLI::Option* checks;
    CLI::Option* instances;
};

Options add_common(CLI::App& cmd, Flags& f)
{
    Options o{};
    cmd.add_option("--config", f.config, "JSON experiment config; flags override its keys");
    o.seed = cmd.add_option("--seed", f.seed, "base seed of all random streams");
    o.snr = cmd.add_option("--snr", f.snr, "SNR grid in dB, e.g. 0,10,20 or 0:5:50");
    o.drops = cmd.add_option("--drops", f.drops, "user drops for cell averaging");
    o.realizations = cmd.add_option("--realizations", f.realizations, "fading realizations per estimate");
    o.selectors = cmd.add_option("--selector", f.selectors,
                                 "proposed | ideal | ideal-mc | fixed:[u1,..,uN] | fixed-all (repeatable)");
    o.format = cmd.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    o.out = cmd.add_option("--out", f.out, "output file (default: stdout)");
    cmd.add_flag("--desk-scale", f.desk_scale, "divide drops and realizations by 20");
    o.threads = cmd.add_option("--threads", f.threads, "worker threads (0 = all cores)");
    o.n_ports = cmd.add_option("--n-ports", f.n_ports, "number of DA ports N");
    o.k_users = cmd.add_option("--k-users", f.k_users, "number of users K");
    return o;
}

das::ExperimentSpec build_spec(das::Scenario scenario, const Flags& f, const Options& o)
{
    das::ExperimentSpec spec;
    spec.scenario = scenario;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in)
            throw das::ConfigError("cannot open config file '" + f.config + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw das::ConfigError("config file '" + f.config + "' is not valid JSON: " + e.what());
        }
        das::apply_config(spec, j);
    }
    if (o.seed->count())
        spec.seed = f.seed;
    if (o.snr->count())
        spec.snr_grid_db = das::parse_snr_list(f.snr);
    if (o.drops->count())
        spec.drops = f.drops;
    if (o.realizations->count())
        spec.realizations = f.realizations;
    if (o.selectors->count())
        spec.selectors = f.selectors;
    if (o.format->count())
        spec.format = f.format == "json" ? das::OutputFormat::json : das::OutputFormat::csv;
    if (o.out->count())
        spec.out = f.out;
    if (f.desk_scale)
        spec.desk_scale = true;
    if (o.threads->count())
        spec.threads = f.threads;
    if (o.n_ports->count())
        spec.n_ports = f.n_ports;
    if (o.k_users->count())
        spec.k_users = f.k_users;
    if (o.checks && o.checks->count()) {
        std::vector<std::string> names;
        std::stringstream ss(f.checks);
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty())
                names.push_back(item);
        spec.checks = names;
    }
    if (o.instances && o.instances->count())
        spec.instances = f.instances;
    if (f.no_tie_perturbation)
        spec.policy.perturb_ties = false;
    return spec;
}

void emit(const das::ExperimentSpec& spec, const std::string& body)
{
    if (spec.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream file(spec.out, std::ios::binary);
    if (!file)
        throw das::ConfigError("cannot write '" + spec.out + "'");
    file << body;
}

int run(das::Scenario scenario, const Flags& f, const Options& o)
{
    const das::ExperimentSpec spec = build_spec(scenario, f, o);
    switch (scenario) {
    case das::Scenario::rate_curve:
        emit(spec, das::serialize(das::rate_curve_table(spec), spec.format));
        return das::exit_ok;
    case das::Scenario::cell_average:
        emit(spec, das::serialize(das::cell_average_table(spec), spec.format));
        return das::exit_ok;
    case das::Scenario::modes: {
        const das::Table table = das::modes_table(spec);
        std::size_t ideal = 0;
        std::size_t proposed = 0;
        for (const auto& row : table.rows)
            (std::get<std::string>(row[0]) == "ideal" ? ideal : proposed) += 1;
        std::cerr << "N=" << spec.n_ports << " K=" << spec.k_users << ": ideal " << ideal << " (formula "
                  << das::ideal_count(spec.n_ports, spec.k_users) << "), proposed " << proposed << " (formula "
                  << das::proposed_count(spec.n_ports) << ")\n";
        emit(spec, das::serialize(table, spec.format));
        return das::exit_ok;
    }
    case das::Scenario::validate: {
        const auto results = das::run_validation(spec);
        emit(spec, das::serialize(das::validation_table(results), spec.format));
        for (const auto& r : results)
            if (!r.passed)
                return das::exit_validation_failure;
        return das::exit_ok;
    }
    }
    return das::exit_config_error;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dasim - ergodic sum rate analysis and transmission mode selection for distributed antenna systems"};
    app.require_subcommand(1);

    Flags flags;
    auto* rate_curve = app.add_subcommand("rate-curve", "closed-form and Monte Carlo rate of every mode, fixed users");
    auto* cell_average = app.add_subcommand("cell-average", "cell-averaged ergodic sum rate per selector");
    auto* modes = app.add_subcommand("modes", "ideal and proposed candidate sets with their sizes");
    auto* validate = app.add_subcommand("validate", "numerical self-checks; nonzero exit on failure");

    const Options rate_opts = add_common(*rate_curve, flags);
    const Options cell_opts = add_common(*cell_average, flags);
    const Options mode_opts = add_common(*modes, flags);
    Options val_opts = add_common(*validate, flags);
    val_opts.checks = validate->add_option("--checks", flags.checks, "comma-separated checks; empty runs none");
    val_opts.instances = validate->add_option("--instances", flags.instances, "random instances per check");
    for (auto* cmd : {rate_curve, cell_average, modes, validate})
        cmd->add_flag("--no-tie-perturbation", flags.no_tie_perturbation,
                      "leave coincident gains singular (exercises the fallback path)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return das::exit_config_error;
    }

    try {
        if (*rate_curve)
            return run(das::Scenario::rate_curve, flags, rate_opts);
        if (*cell_average)
            return run(das::Scenario::cell_average, flags, cell_opts);
        if (*modes)
            return run(das::Scenario::modes, flags, mode_opts);
        return run(das::Scenario::validate, flags, val_opts);
    } catch (const das::QuadratureError& e) {
        std::cerr << "dasim: numerical failure: " << e.what() << '\n';
        return das::exit_numerical_failure;
    } catch (const std::domain_error& e) {
        std::cerr << "dasim: numerical failure: " << e.what() << '\n';
        return das::exit_numerical_failure;
    } catch (const std::overflow_error& e) {
        std::cerr << "dasim: numerical failure: " << e.what() << '\n';
        return das::exit_numerical_failure;
    } catch (const std::logic_error& e) {
        // ConfigError, invalid_argument and EnumerationTooLarge
        std::cerr << "dasim: " << e.what() << '\n';
        return das::exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "dasim: " << e.what() << '\n';
        return das::exit_numerical_failure;
    }
}
