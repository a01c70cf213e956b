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

#include <algorithm>
#include <numeric>
#include <set>

#include "das/mode_space.hpp"

using namespace das;

TEST_CASE("mode parsing and printing")
{
    const auto m = TransmissionMode::parse("[2,1]");
    CHECK(m.assignments() == std::vector<int>{2, 1});
    CHECK(m.to_string() == "[2,1]");
    CHECK(TransmissionMode::parse("2 0 1") == TransmissionMode({2, 0, 1}));
    CHECK(TransmissionMode::parse("1,1") == TransmissionMode({1, 1}));
    CHECK_THROWS_AS(TransmissionMode::parse("[]"), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionMode::parse("[a,1]"), std::invalid_argument);
}

TEST_CASE("mode validation")
{
    CHECK_NOTHROW(TransmissionMode({1, 0}).validate(2));
    CHECK_THROWS_AS(TransmissionMode({0, 0}).validate(2), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionMode({3, 1}).validate(2), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionMode({-1, 1}).validate(2), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionMode({1}).validate(0), std::invalid_argument);
}

TEST_CASE("groups of [1,2]")
{
    const ModeGroups g = derive_groups(TransmissionMode({1, 2}), 2);
    CHECK(g.serving_sets[0] == std::vector<std::size_t>{0});
    CHECK(g.serving_sets[1] == std::vector<std::size_t>{1});
    CHECK(g.interference_sets[0] == std::vector<std::size_t>{1});
    CHECK(g.interference_sets[1] == std::vector<std::size_t>{0});
    CHECK(g.active_set == std::vector<std::size_t>{0, 1});
}

TEST_CASE("groups of single-user and partial modes")
{
    const ModeGroups full = derive_groups(TransmissionMode({1, 1}), 2);
    CHECK(full.serving_sets[0] == std::vector<std::size_t>{0, 1});
    CHECK(full.serving_sets[1].empty());
    CHECK(full.interference_sets[0].empty());
    CHECK_FALSE(full.is_active(1));

    const ModeGroups g = derive_groups(TransmissionMode({2, 0, 2, 1}), 3);
    CHECK(g.active_set == std::vector<std::size_t>{0, 2, 3});
    CHECK(g.serving_sets[1] == std::vector<std::size_t>{0, 2});
    CHECK(g.interference_sets[1] == std::vector<std::size_t>{3});
    CHECK(g.interference_sets[0] == std::vector<std::size_t>{0, 2});
    CHECK(g.serving_sets[2].empty());
}

TEST_CASE("group identities hold on every mode of N=K=3")
{
    for (const auto& mode : enumerate_ideal(3, 3)) {
        const ModeGroups g = derive_groups(mode, 3);
        std::size_t served = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            served += g.serving_sets[i].size();
            if (g.is_active(i))
                CHECK(g.serving_sets[i].size() + g.interference_sets[i].size() == g.active_set.size());
        }
        CHECK(served == mode.active_ports());
    }
}

TEST_CASE("ideal counts")
{
    CHECK(ideal_count(1, 1) == 1);
    CHECK(ideal_count(2, 2) == 4);
    CHECK(ideal_count(3, 3) == 45);
    CHECK(ideal_count(4, 4) == 568);
    CHECK(ideal_count(5, 5) == 7625);
    CHECK_THROWS_AS(ideal_count(200, 200), std::overflow_error);
    CHECK_THROWS_AS(ideal_count(0, 2), std::invalid_argument);
}

TEST_CASE("ideal enumeration matches the closed count and its own definition")
{
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t k = 1; k <= 4; ++k) {
            const CandidateSet set = enumerate_ideal(n, k);
            CHECK(set.size() == ideal_count(n, k));
            CHECK(std::is_sorted(set.begin(), set.end()));
            for (const auto& m : set) {
                CHECK_NOTHROW(m.validate(k));
                CHECK_FALSE((m.is_single_user() && m.active_ports() < n));
            }
        }
    }
    CHECK(enumerate_ideal(5, 5).size() == 7625);

    const CandidateSet two = enumerate_ideal(2, 2);
    REQUIRE(two.size() == 4);
    CHECK(two.modes()[0] == TransmissionMode({1, 1}));
    CHECK(two.modes()[1] == TransmissionMode({1, 2}));
    CHECK(two.modes()[2] == TransmissionMode({2, 1}));
    CHECK(two.modes()[3] == TransmissionMode({2, 2}));
}

TEST_CASE("enumeration cap")
{
    CHECK_THROWS_AS(enumerate_ideal(5, 5, 1000), EnumerationTooLarge);
    try {
        enumerate_ideal(4, 4, 10);
    } catch (const EnumerationTooLarge& e) {
        CHECK(e.requested() == 568);
        CHECK(e.cap() == 10);
    }
}

TEST_CASE("candidate set keeps insertion order and drops duplicates")
{
    CandidateSet s(CandidateProvenance::min_distance);
    CHECK(s.insert(TransmissionMode({2, 1})));
    CHECK(s.insert(TransmissionMode({1, 1})));
    CHECK_FALSE(s.insert(TransmissionMode({2, 1})));
    REQUIRE(s.size() == 2);
    CHECK(s.modes()[0] == TransmissionMode({2, 1}));
    CHECK(s.contains(TransmissionMode({1, 1})));
    CHECK_FALSE(s.contains(TransmissionMode({1, 2})));
}

TEST_CASE("reference two-user geometry gives the proposed set {[2,1],[1,1]}")
{
    const std::vector<Position> users{{-2.5, -2.0}, {3.0, 4.5}};
    const CellLayout layout = CellLayout::canonical(2);
    const Matrix d = distance_matrix(users, layout.ports);
    CHECK(nearest_user_mode(d) == TransmissionMode({2, 1}));
    const CandidateSet set = generate_min_distance_candidates(d);
    REQUIRE(set.size() == 2);
    CHECK(set.modes()[0] == TransmissionMode({2, 1}));
    CHECK(set.modes()[1] == TransmissionMode({1, 1}));
    CHECK(set.provenance() == CandidateProvenance::min_distance);
}

TEST_CASE("nearest-user ties go to the lowest user index")
{
    Matrix d(2, 2, 1.0);
    d(0, 1) = 2.0;
    CHECK(nearest_user_mode(d) == TransmissionMode({1, 2}));
}

TEST_CASE("proposed set sizes")
{
    CHECK(proposed_count(1) == 1);
    CHECK(proposed_count(2) == 2);
    CHECK(proposed_count(3) == 5);
    CHECK(proposed_count(4) == 12);
    CHECK(proposed_count(5) == 27);

    RngStream rng(2024, 0);
    for (std::size_t n = 1; n <= 6; ++n) {
        const CellLayout layout = CellLayout::canonical(n);
        for (int t = 0; t < 40; ++t) {
            const auto users = sample_uniform_users(n, layout.cell_radius, rng);
            const Matrix d = distance_matrix(users, layout.ports);
            const CandidateSet set = generate_min_distance_candidates(d);
            const TransmissionMode base = nearest_user_mode(d);
            std::uint64_t expected = proposed_count(n);
            if (n >= 2 && base.active_users() == 1)
                expected -= 1;
            CHECK(set.size() == expected);
            CHECK(set.modes()[0] == base);
            // every member is a masking of D0 or the all-nearest single-user mode
            for (const auto& m : set) {
                if (m.is_single_user() && m.active_ports() == n)
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    CHECK_UNARY((m[j] == 0 || m[j] == base[j]));
            }
        }
    }
}

TEST_CASE("proposed set of a hand-made N=4 distance matrix")
{
    // ports 1,2 nearest to user 1; ports 3,4 nearest to user 2; user 2 holds the global minimum
    Matrix d(2, 4);
    const double rows[2][4] = {{1.0, 2.0, 9.0, 9.0}, {8.0, 8.0, 0.5, 3.0}};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            d(i, j) = rows[i][j];
    const CandidateSet set = generate_min_distance_candidates(d);
    CHECK(set.size() == 12);
    CHECK(set.modes().front() == TransmissionMode({1, 1, 2, 2}));
    CHECK(set.modes().back() == TransmissionMode({2, 2, 2, 2}));
    CHECK(set.contains(TransmissionMode({1, 0, 0, 2})));
    CHECK(set.contains(TransmissionMode({1, 1, 0, 0})));
    CHECK_FALSE(set.contains(TransmissionMode({1, 0, 0, 0})));
    CHECK_FALSE(set.contains(TransmissionMode({1, 1, 1, 1})));
}

TEST_CASE("relabeling users permutes the proposed set")
{
    RngStream rng(99, 1);
    const CellLayout layout = CellLayout::canonical(4);
    for (int t = 0; t < 20; ++t) {
        const auto users = sample_uniform_users(3, layout.cell_radius, rng);
        const std::vector<Position> swapped{users[2], users[0], users[1]};
        // old user i+1 becomes new user perm[i]
        const int perm[4] = {0, 2, 3, 1};
        const CandidateSet a = generate_min_distance_candidates(distance_matrix(users, layout.ports));
        const CandidateSet b = generate_min_distance_candidates(distance_matrix(swapped, layout.ports));
        REQUIRE(a.size() == b.size());
        for (const auto& m : a) {
            std::vector<int> u = m.assignments();
            for (int& x : u)
                x = perm[x];
            CHECK(b.contains(TransmissionMode(u)));
        }
    }
}

TEST_CASE("degenerate inputs")
{
    CHECK_THROWS_AS(generate_min_distance_candidates(Matrix{}), std::invalid_argument);
    Matrix d(1, 2, 1.0);
    d(0, 0) = 0.0;
    CHECK_THROWS_AS(generate_min_distance_candidates(d), std::invalid_argument);
    CHECK_THROWS_AS(generate_min_distance_candidates(Matrix(2, 8, 1.0), 100), EnumerationTooLarge);
    const CandidateSet single = generate_min_distance_candidates(Matrix(3, 1, 2.0));
    CHECK(single.size() == 1);
}
