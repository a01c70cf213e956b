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

#include "das/mode_space.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

namespace das {

TransmissionMode::TransmissionMode(std::vector<int> assignments)
    : assignments_(std::move(assignments))
{
}

std::size_t TransmissionMode::active_ports() const
{
    return static_cast<std::size_t>(
        std::count_if(assignments_.begin(), assignments_.end(), [](int u) { return u != 0; }));
}

std::size_t TransmissionMode::active_users() const
{
    std::set<int> users;
    for (int u : assignments_)
        if (u != 0)
            users.insert(u);
    return users.size();
}

int TransmissionMode::max_user() const
{
    return assignments_.empty() ? 0 : *std::max_element(assignments_.begin(), assignments_.end());
}

void TransmissionMode::validate(std::size_t k_users) const
{
    if (k_users == 0)
        throw std::invalid_argument("mode validation needs at least one user");
    if (assignments_.empty())
        throw std::invalid_argument("mode has no ports");
    for (int u : assignments_) {
        if (u < 0)
            throw std::invalid_argument("mode " + to_string() + " has a negative user index");
        if (static_cast<std::size_t>(u) > k_users)
            throw std::invalid_argument("mode " + to_string() + " references user " + std::to_string(u) +
                                        " but only " + std::to_string(k_users) + " exist");
    }
    if (active_ports() == 0)
        throw std::invalid_argument("mode " + to_string() + " has every port off");
}

std::string TransmissionMode::to_string() const
{
    std::string out = "[";
    for (std::size_t j = 0; j < assignments_.size(); ++j) {
        if (j)
            out += ',';
        out += std::to_string(assignments_[j]);
    }
    out += ']';
    return out;
}

TransmissionMode TransmissionMode::parse(std::string_view text)
{
    std::vector<int> values;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    auto skip = [&] {
        while (p != end && (*p == ' ' || *p == '\t' || *p == ',' || *p == '[' || *p == ']'))
            ++p;
    };
    skip();
    while (p != end) {
        int v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{})
            throw std::invalid_argument("cannot parse mode '" + std::string(text) + "'");
        values.push_back(v);
        p = next;
        skip();
    }
    if (values.empty())
        throw std::invalid_argument("empty mode '" + std::string(text) + "'");
    return TransmissionMode(std::move(values));
}

ModeGroups derive_groups(const TransmissionMode& mode, std::size_t k_users)
{
    mode.validate(k_users);
    ModeGroups g;
    g.serving_sets.resize(k_users);
    g.interference_sets.resize(k_users);
    for (std::size_t j = 0; j < mode.n_ports(); ++j) {
        if (mode[j] == 0)
            continue;
        g.serving_sets[static_cast<std::size_t>(mode[j] - 1)].push_back(j);
        g.active_set.push_back(j);
    }
    for (std::size_t i = 0; i < k_users; ++i)
        for (std::size_t j : g.active_set)
            if (static_cast<std::size_t>(mode[j]) != i + 1)
                g.interference_sets[i].push_back(j);
    return g;
}

bool CandidateSet::insert(TransmissionMode mode)
{
    if (!seen_.insert(mode).second)
        return false;
    modes_.push_back(std::move(mode));
    return true;
}

bool CandidateSet::contains(const TransmissionMode& mode) const
{
    return seen_.contains(mode);
}

EnumerationTooLarge::EnumerationTooLarge(std::uint64_t requested, std::uint64_t cap)
    : std::length_error("candidate enumeration of size " + std::to_string(requested) +
                        " exceeds the cap of " + std::to_string(cap))
    , requested_(requested)
    , cap_(cap)
{
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
        throw std::overflow_error("candidate count does not fit in 64 bits");
    return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exponent)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exponent; ++i)
        r = checked_mul(r, base);
    return r;
}

} // namespace

std::uint64_t ideal_count(std::size_t n_ports, std::size_t k_users)
{
    if (n_ports == 0 || k_users == 0)
        throw std::invalid_argument("ideal_count: N and K must be positive");
    const std::uint64_t all = checked_pow(k_users + 1, n_ports);
    const std::uint64_t partial_single = checked_mul(k_users, checked_pow(2, n_ports) - 2);
    return all - partial_single - 1;
}

std::uint64_t proposed_count(std::size_t n_ports)
{
    if (n_ports == 0)
        throw std::invalid_argument("proposed_count: N must be positive");
    return checked_pow(2, n_ports) - n_ports;
}

CandidateSet enumerate_ideal(std::size_t n_ports, std::size_t k_users, std::uint64_t cap)
{
    const std::uint64_t expected = ideal_count(n_ports, k_users);
    if (expected > cap)
        throw EnumerationTooLarge(expected, cap);

    CandidateSet out(CandidateProvenance::ideal);
    std::vector<int> digits(n_ports, 0);
    const int base = static_cast<int>(k_users) + 1;
    for (;;) {
        // odometer increment, last port fastest
        std::size_t pos = n_ports;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < base)
                break;
            digits[pos] = 0;
            if (pos == 0) {
                pos = n_ports; // wrapped
                break;
            }
        }
        if (pos == n_ports)
            break;

        TransmissionMode mode(digits);
        if (mode.active_users() == 1 && mode.active_ports() < n_ports)
            continue;
        out.insert(std::move(mode));
    }
    return out;
}

TransmissionMode nearest_user_mode(const Matrix& distances)
{
    if (distances.rows() == 0 || distances.cols() == 0)
        throw std::invalid_argument("distance matrix must be non-empty");
    std::vector<int> u(distances.cols());
    for (std::size_t j = 0; j < distances.cols(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < distances.rows(); ++i)
            if (distances(i, j) < distances(best, j))
                best = i;
        u[j] = static_cast<int>(best + 1);
    }
    return TransmissionMode(std::move(u));
}

CandidateSet generate_min_distance_candidates(const Matrix& distances, std::uint64_t cap)
{
    const std::size_t n = distances.cols();
    const std::size_t k = distances.rows();
    if (n == 0 || k == 0)
        throw std::invalid_argument("distance matrix must be non-empty");
    for (double d : distances.data())
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("distances must be positive and finite");
    if (n >= 63 || proposed_count(n) > cap)
        throw EnumerationTooLarge(n >= 63 ? std::numeric_limits<std::uint64_t>::max() : proposed_count(n), cap);

    const TransmissionMode base = nearest_user_mode(distances);
    CandidateSet out(CandidateProvenance::min_distance);
    out.insert(base);

    const std::uint64_t masks = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t m = 1; m <= masks; ++m) {
        // most significant bit is port 1
        std::vector<int> u(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            if ((m >> (n - 1 - j)) & 1U)
                u[j] = base[j];
        TransmissionMode mode(std::move(u));
        if (mode.active_ports() > 1)
            out.insert(std::move(mode));
    }

    std::size_t best_i = 0;
    std::size_t best_j = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (distances(i, j) < distances(best_i, best_j))
                best_i = i, best_j = j;
    out.insert(TransmissionMode(std::vector<int>(n, static_cast<int>(best_i + 1))));
    return out;
}

} // namespace das
