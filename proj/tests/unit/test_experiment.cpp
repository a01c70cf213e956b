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

#include <doctest.h>

#include <cmath>

#include "das/experiment.hpp"

using namespace das;

TEST_CASE("doubles print in their shortest round-trip form")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2.0");
    CHECK(format_double(-0.0) == "-0.0");
    CHECK(format_double(1e300) == "1e+300");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK_THROWS(format_double(std::nan("")));
}

TEST_CASE("csv round trip, including quoting")
{
    Table t{{"a", "b", "c"}, {}};
    t.add_row({std::int64_t{3}, 0.1 + 0.2, std::string("x,\"y\"")});
    t.add_row({std::int64_t{-1}, 1e-300, std::string("[1,2]")});
    const std::string csv = to_csv(t);
    CHECK(csv.starts_with("a,b,c\n3,0.30000000000000004,\"x,\"\"y\"\"\"\n"));
    CHECK(parse_csv(csv) == t);
    CHECK_THROWS(t.add_row({std::int64_t{1}}));
    CHECK(t.column_index("c") == 2);
}

TEST_CASE("json round trip")
{
    Table t{{"snr_db", "mode", "rate"}, {}};
    t.add_row({0.0, std::string("[1,2]"), 0.123456789012345});
    t.add_row({5.0, std::string("[2,1]"), 7.0});
    const std::string json = to_json(t);
    CHECK(json.back() == '\n');
    CHECK(parse_json(json) == t);
    CHECK(to_json(parse_json(json)) == json);
}

TEST_CASE("snr lists")
{
    CHECK(parse_snr_list("0,10,20") == std::vector<double>{0, 10, 20});
    CHECK(parse_snr_list("0:5:50").size() == 11);
    CHECK(parse_snr_list("0:5:50").back() == 50.0);
    CHECK(parse_snr_list("-10:10:10,25") == std::vector<double>{-10, 0, 10, 25});
    CHECK_THROWS_AS(parse_snr_list("0:0:10"), ConfigError);
    CHECK_THROWS_AS(parse_snr_list("abc"), ConfigError);
    CHECK(ExperimentSpec::default_snr_grid() == parse_snr_list("0:5:50"));
}

TEST_CASE("config files")
{
    ExperimentSpec spec;
    apply_config(spec, nlohmann::json::parse(R"({"n_ports": 3, "k_users": 3, "snr_db": [0, 20],
        "selectors": ["proposed", "ideal-mc"], "seed": 9, "drops": 40, "realizations": 100,
        "desk_scale": true, "perturb_ties": false, "format": "json"})"));
    CHECK(spec.n_ports == 3);
    CHECK(spec.snr_grid_db == std::vector<double>{0, 20});
    CHECK(spec.seed == 9);
    CHECK(spec.effective_drops() == 2);
    CHECK(spec.effective_realizations() == 5);
    CHECK_FALSE(spec.policy.perturb_ties);
    CHECK(spec.format == OutputFormat::json);
    CHECK_THROWS_AS(apply_config(spec, nlohmann::json::parse(R"({"colour": 1})")), ConfigError);
    CHECK_THROWS_AS(apply_config(spec, nlohmann::json::parse(R"({"drops": "many"})")), ConfigError);
    CHECK_THROWS_AS(apply_config(spec, nlohmann::json::parse("[1]")), ConfigError);
}

TEST_CASE("spec validation")
{
    ExperimentSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.n_ports = 0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = ExperimentSpec{};
    spec.selectors = {"best"};
    CHECK_THROWS_AS(expand_selectors(spec), ConfigError);
    spec.selectors = {"fixed:[1,2]", "fixed-all", "ideal-mc"};
    const auto choices = expand_selectors(spec);
    REQUIRE(choices.size() == 1 + 4 + 1);
    CHECK(choices[0].fixed_mode == TransmissionMode({1, 2}));
    CHECK(choices.back().selector == Selector::ideal_exhaustive_mc);
}

TEST_CASE("rate-curve table")
{
    ExperimentSpec spec;
    spec.scenario = Scenario::rate_curve;
    spec.snr_grid_db = {10.0, 40.0};
    spec.realizations = 200;
    const Table t = rate_curve_table(spec);
    CHECK(t.columns == std::vector<std::string>{"snr_db", "mode", "closed_form_rate", "mc_rate", "mc_std_error"});
    CHECK(t.rows.size() == 8);
    CHECK(std::get<std::string>(t.rows[0][1]) == "[1,1]");
    CHECK(rate_curve_table(spec) == t);
}

TEST_CASE("cell-average table")
{
    ExperimentSpec spec;
    spec.snr_grid_db = {10.0};
    spec.drops = 5;
    spec.realizations = 50;
    spec.threads = 1;
    spec.selectors = {"proposed", "ideal-mc"};
    const Table t = cell_average_table(spec);
    CHECK(t.columns ==
          std::vector<std::string>{"snr_db", "selector", "mean_sum_rate", "std_error", "drops", "realizations"});
    REQUIRE(t.rows.size() == 2);
    CHECK(std::get<std::string>(t.rows[0][1]) == "proposed_closed_form");
    CHECK(std::get<std::int64_t>(t.rows[1][5]) == 50);
    CHECK(parse_csv(to_csv(t)) == t);
}

TEST_CASE("modes table")
{
    ExperimentSpec spec;
    spec.n_ports = 3;
    spec.k_users = 3;
    const Table t = modes_table(spec);
    std::size_t ideal = 0;
    for (const auto& row : t.rows)
        ideal += std::get<std::string>(row[0]) == "ideal";
    CHECK(ideal == 45);
}

TEST_CASE("validation suite passes on defaults and flags the injected fault")
{
    ExperimentSpec spec;
    spec.instances = 20;
    spec.realizations = 5000;
    spec.checks = std::vector<std::string>{"counts", "normalization", "oracle_equivalence", "dominance",
                                           "conditioning"};
    for (const auto& r : run_validation(spec)) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
    spec.policy.perturb_ties = false;
    spec.checks = std::vector<std::string>{"conditioning"};
    const auto r = run_validation(spec);
    CHECK(r[0].passed);
    CHECK(r[0].detail.find("fallback engaged") != std::string::npos);
    spec.checks = std::vector<std::string>{"nope"};
    CHECK_THROWS_AS(run_validation(spec), ConfigError);
}
