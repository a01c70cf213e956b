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

#include <cmath>
#include <set>
#include <sstream>

namespace das {

std::vector<double> ExperimentSpec::default_snr_grid()
{
    std::vector<double> grid;
    for (int s = 0; s <= 50; s += 5)
        grid.push_back(s);
    return grid;
}

std::size_t ExperimentSpec::effective_drops() const
{
    return desk_scale ? std::max<std::size_t>(1, drops / 20) : drops;
}

std::size_t ExperimentSpec::effective_realizations() const
{
    return desk_scale ? std::max<std::size_t>(2, realizations / 20) : realizations;
}

CellLayout ExperimentSpec::layout() const
{
    CellLayout layout = CellLayout::canonical(n_ports, cell_radius, pathloss_exponent);
    if (ports)
        layout.ports = *ports;
    return layout;
}

void ExperimentSpec::validate() const
{
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (n_ports == 0 || k_users == 0)
        fail("n_ports and k_users must be positive");
    if (!(cell_radius > 0.0) || !std::isfinite(cell_radius))
        fail("cell_radius must be positive");
    if (!(pathloss_exponent > 0.0) || !std::isfinite(pathloss_exponent))
        fail("pathloss_exponent must be positive");
    if (ports && ports->size() != n_ports)
        fail("ports lists " + std::to_string(ports->size()) + " positions but n_ports is " + std::to_string(n_ports));
    if (!users.empty() && users.size() != k_users)
        fail("users lists " + std::to_string(users.size()) + " positions but k_users is " + std::to_string(k_users));
    if (!users.empty() && scenario == Scenario::cell_average)
        fail("fixed user positions are not allowed for cell-average (users are dropped at random)");
    if (snr_grid_db.empty() && (scenario == Scenario::rate_curve || scenario == Scenario::cell_average))
        fail("SNR grid is empty");
    for (double s : snr_grid_db)
        if (!std::isfinite(s))
            fail("SNR values must be finite");
    if (effective_drops() == 0)
        fail("drops must be positive");
    if (effective_realizations() < 2)
        fail("realizations must be at least 2");
    if (exclusion_radius < 0.0 || exclusion_radius >= cell_radius)
        fail("exclusion_radius must lie in [0, cell_radius)");
    if (scenario == Scenario::cell_average && selectors.empty())
        fail("cell-average needs at least one selector");
    try {
        policy.validate();
        layout().validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    for (const auto& p : users)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            fail("user positions must be finite");
}

namespace {

std::vector<Position> positions_from_json(const nlohmann::json& j, const std::string& key)
{
    if (!j.is_array())
        throw ConfigError("'" + key + "' must be an array of [x, y] pairs");
    std::vector<Position> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ConfigError("'" + key + "' entries must be [x, y] number pairs");
        out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
}

template <class T>
T get_as(const nlohmann::json& value, const std::string& key)
{
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

std::size_t get_count(const nlohmann::json& value, const std::string& key)
{
    if (!value.is_number_integer() || value.get<long long>() < 0)
        throw ConfigError("config key '" + key + "' must be a non-negative integer");
    return value.get<std::size_t>();
}

} // namespace

void apply_config(ExperimentSpec& spec, const nlohmann::json& config)
{
    if (!config.is_object())
        throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
        if (key == "n_ports")
            spec.n_ports = get_count(value, key);
        else if (key == "k_users")
            spec.k_users = get_count(value, key);
        else if (key == "cell_radius")
            spec.cell_radius = get_as<double>(value, key);
        else if (key == "pathloss_exponent")
            spec.pathloss_exponent = get_as<double>(value, key);
        else if (key == "ports")
            spec.ports = positions_from_json(value, key);
        else if (key == "users")
            spec.users = positions_from_json(value, key);
        else if (key == "snr_db") {
            if (value.is_string())
                spec.snr_grid_db = parse_snr_list(value.get<std::string>());
            else
                spec.snr_grid_db = get_as<std::vector<double>>(value, key);
        } else if (key == "selectors")
            spec.selectors = get_as<std::vector<std::string>>(value, key);
        else if (key == "seed")
            spec.seed = get_as<std::uint64_t>(value, key);
        else if (key == "drops")
            spec.drops = get_count(value, key);
        else if (key == "realizations")
            spec.realizations = get_count(value, key);
        else if (key == "desk_scale")
            spec.desk_scale = get_as<bool>(value, key);
        else if (key == "threads")
            spec.threads = get_count(value, key);
        else if (key == "exclusion_radius")
            spec.exclusion_radius = get_as<double>(value, key);
        else if (key == "max_candidates")
            spec.max_candidates = get_as<std::uint64_t>(value, key);
        else if (key == "tie_epsilon")
            spec.policy.tie_epsilon = get_as<double>(value, key);
        else if (key == "conditioning_threshold")
            spec.policy.conditioning_threshold = get_as<double>(value, key);
        else if (key == "quadrature_rel_tol")
            spec.policy.quadrature_rel_tol = get_as<double>(value, key);
        else if (key == "perturb_ties")
            spec.policy.perturb_ties = get_as<bool>(value, key);
        else if (key == "checks")
            spec.checks = get_as<std::vector<std::string>>(value, key);
        else if (key == "instances")
            spec.instances = get_count(value, key);
        else if (key == "format") {
            const auto f = get_as<std::string>(value, key);
            if (f == "csv")
                spec.format = OutputFormat::csv;
            else if (f == "json")
                spec.format = OutputFormat::json;
            else
                throw ConfigError("format must be csv or json");
        } else if (key == "out")
            spec.out = get_as<std::string>(value, key);
        else
            throw ConfigError("unknown config key '" + key + "'");
    }
}

std::vector<double> parse_snr_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream items(text);
    std::string item;
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size())
                throw ConfigError("bad SNR value '" + s + "'");
            return v;
        } catch (const std::logic_error&) {
            throw ConfigError("bad SNR value '" + s + "'");
        }
    };
    while (std::getline(items, item, ',')) {
        std::erase(item, ' ');
        if (item.empty())
            continue;
        const auto first = item.find(':');
        if (first == std::string::npos) {
            out.push_back(number(item));
            continue;
        }
        const auto second = item.find(':', first + 1);
        if (second == std::string::npos)
            throw ConfigError("SNR range must be start:step:stop, got '" + item + "'");
        const double start = number(item.substr(0, first));
        const double step = number(item.substr(first + 1, second - first - 1));
        const double stop = number(item.substr(second + 1));
        if (!(step > 0.0) || stop < start)
            throw ConfigError("SNR range needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 100000)
            throw ConfigError("SNR range is too long");
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

std::vector<SelectorChoice> expand_selectors(const ExperimentSpec& spec)
{
    std::vector<SelectorChoice> out;
    for (const auto& name : spec.selectors) {
        if (name == "proposed" || name == "proposed_closed_form")
            out.push_back({Selector::proposed_closed_form, std::nullopt});
        else if (name == "ideal" || name == "ideal_exhaustive_closed")
            out.push_back({Selector::ideal_exhaustive_closed, std::nullopt});
        else if (name == "ideal-mc" || name == "ideal_exhaustive_mc")
            out.push_back({Selector::ideal_exhaustive_mc, std::nullopt});
        else if (name == "fixed-all") {
            for (const auto& mode : enumerate_ideal(spec.n_ports, spec.k_users, spec.max_candidates))
                out.push_back({Selector::fixed_mode, mode});
        } else if (name.starts_with("fixed:") || name.starts_with("fixed_mode:")) {
            TransmissionMode mode;
            try {
                mode = TransmissionMode::parse(name.substr(name.find(':') + 1));
                if (mode.n_ports() != spec.n_ports)
                    throw std::invalid_argument("mode " + mode.to_string() + " does not have " +
                                                std::to_string(spec.n_ports) + " ports");
                mode.validate(spec.k_users);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("selector '") + name + "': " + e.what());
            }
            out.push_back({Selector::fixed_mode, mode});
        } else {
            throw ConfigError("unknown selector '" + name + "'");
        }
    }
    return out;
}

std::vector<Position> reference_two_user_positions()
{
    return {{-2.5, -2.0}, {3.0, 4.5}};
}

namespace {

std::vector<Position> fixed_users(const ExperimentSpec& spec)
{
    if (!spec.users.empty())
        return spec.users;
    if (spec.n_ports == 2 && spec.k_users == 2)
        return reference_two_user_positions();
    throw ConfigError("rate-curve needs fixed user positions ('users' in the config)");
}

PathlossMatrix checked_gains(const std::vector<Position>& users, const CellLayout& layout)
{
    try {
        return build_pathloss_matrix(users, layout);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid geometry: ") + e.what());
    }
}

} // namespace

Table rate_curve_table(const ExperimentSpec& spec)
{
    spec.validate();
    const CellLayout layout = spec.layout();
    const PathlossMatrix gains = checked_gains(fixed_users(spec), layout);
    const CandidateSet modes = enumerate_ideal(spec.n_ports, spec.k_users, spec.max_candidates);

    std::vector<LinkBudget> budgets;
    for (double snr : spec.snr_grid_db)
        budgets.push_back(LinkBudget::from_snr_db(snr));

    Table table{{"snr_db", "mode", "closed_form_rate", "mc_rate", "mc_std_error"}, {}};
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const TransmissionMode& mode = modes.modes()[m];
        RngStream rng(spec.seed, m);
        const auto draws = sample_fading_batch(spec.effective_realizations(), gains.users(), gains.ports(), rng);
        const auto mc = mc_ergodic_sum_rate_grid(mode, gains, budgets, draws);
        for (std::size_t s = 0; s < budgets.size(); ++s) {
            const double closed = ergodic_sum_rate_closed(mode, gains, budgets[s], spec.policy).sum_rate;
            table.add_row({spec.snr_grid_db[s], mode.to_string(), closed, mc[s].mean, mc[s].std_error});
        }
    }
    return table;
}

Table cell_average_table(const ExperimentSpec& spec)
{
    spec.validate();
    const CellLayout layout = spec.layout();
    Table table{{"snr_db", "selector", "mean_sum_rate", "std_error", "drops", "realizations"}, {}};
    for (const auto& choice : expand_selectors(spec)) {
        DropExperimentConfig config;
        config.n_ports = spec.n_ports;
        config.k_users = spec.k_users;
        config.snr_grid_db = spec.snr_grid_db;
        config.drops = spec.effective_drops();
        config.mc = {spec.effective_realizations(), spec.seed, 0};
        config.selector = choice.selector;
        config.fixed_mode = choice.fixed_mode;
        config.policy = spec.policy;
        config.threads = spec.threads;
        config.exclusion_radius = spec.exclusion_radius;
        config.max_candidates = spec.max_candidates;
        for (const auto& row : cell_average_experiment(config, layout))
            table.add_row({row.snr_db, row.selector, row.mean_sum_rate, row.std_error,
                           static_cast<std::int64_t>(row.drops), static_cast<std::int64_t>(row.realizations)});
    }
    return table;
}

Table modes_table(const ExperimentSpec& spec)
{
    spec.validate();
    const CellLayout layout = spec.layout();
    const CandidateSet ideal = enumerate_ideal(spec.n_ports, spec.k_users, spec.max_candidates);

    std::vector<Position> users = spec.users;
    if (users.empty()) {
        RngStream rng(spec.seed, 0);
        users = sample_uniform_users(spec.k_users, layout.cell_radius, rng, layout.ports, spec.exclusion_radius);
    }
    checked_gains(users, layout);
    const CandidateSet proposed =
        generate_min_distance_candidates(distance_matrix(users, layout.ports), spec.max_candidates);

    Table table{{"set", "size", "formula_size", "index", "mode"}, {}};
    auto emit = [&](const char* name, const CandidateSet& set, std::uint64_t formula) {
        for (std::size_t i = 0; i < set.size(); ++i)
            table.add_row({std::string(name), static_cast<std::int64_t>(set.size()),
                           static_cast<std::int64_t>(formula), static_cast<std::int64_t>(i + 1),
                           set.modes()[i].to_string()});
    };
    emit("ideal", ideal, ideal_count(spec.n_ports, spec.k_users));
    emit("proposed", proposed, proposed_count(spec.n_ports));
    return table;
}

Table validation_table(const std::vector<CheckResult>& results)
{
    Table table{{"check", "status", "measured", "tolerance", "detail"}, {}};
    for (const auto& r : results)
        table.add_row({r.name, std::string(r.passed ? "pass" : "fail"), r.measured, r.tolerance, r.detail});
    return table;
}

std::string serialize(const Table& table, OutputFormat format)
{
    return format == OutputFormat::json ? to_json(table) : to_csv(table);
}

} // namespace das
