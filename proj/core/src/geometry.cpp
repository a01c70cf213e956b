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

#include "das/geometry.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace das {

double distance(const Position& a, const Position& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

CellLayout CellLayout::canonical(std::size_t n_ports, double cell_radius, double pathloss_exponent)
{
    CellLayout layout;
    layout.cell_radius = cell_radius;
    layout.ports = place_ports(n_ports, cell_radius);
    layout.pathloss_exponent = pathloss_exponent;
    return layout;
}

void CellLayout::validate() const
{
    if (!(cell_radius > 0.0) || !std::isfinite(cell_radius))
        throw std::invalid_argument("cell radius must be positive and finite");
    if (ports.empty())
        throw std::invalid_argument("layout needs at least one port");
    if (!(pathloss_exponent > 0.0) || !std::isfinite(pathloss_exponent))
        throw std::invalid_argument("pathloss exponent must be positive and finite");
    for (const auto& p : ports)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || std::hypot(p.x, p.y) > cell_radius)
            throw std::invalid_argument("ports must lie inside the cell");
}

LinkBudget LinkBudget::from_snr_db(double snr_db)
{
    return {std::pow(10.0, snr_db / 10.0), 1.0};
}

void LinkBudget::validate() const
{
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument("transmit power must be positive and finite");
    if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
        throw std::invalid_argument("noise variance must be positive and finite");
}

std::vector<Position> place_ports(std::size_t n_ports, double cell_radius)
{
    if (n_ports == 0)
        throw std::invalid_argument("place_ports: need at least one port");
    if (!(cell_radius > 0.0) || !std::isfinite(cell_radius))
        throw std::invalid_argument("place_ports: cell radius must be positive");

    const double ring = kPortRingFraction * cell_radius;
    std::vector<Position> ports;
    ports.reserve(n_ports);
    for (std::size_t j = 0; j < n_ports; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_ports);
        ports.push_back({ring * std::cos(angle), ring * std::sin(angle)});
    }
    return ports;
}

double pathloss(double distance, double exponent)
{
    if (!(distance > 0.0))
        throw std::invalid_argument("pathloss: distance must be positive");
    return std::pow(distance, -exponent);
}

double pathloss_db(double distance, double exponent)
{
    return -10.0 * std::log10(pathloss(distance, exponent));
}

Matrix distance_matrix(std::span<const Position> users, std::span<const Position> ports)
{
    Matrix d(users.size(), ports.size());
    for (std::size_t i = 0; i < users.size(); ++i)
        for (std::size_t j = 0; j < ports.size(); ++j)
            d(i, j) = distance(users[i], ports[j]);
    return d;
}

PathlossMatrix build_pathloss_matrix(std::span<const Position> users, const CellLayout& layout)
{
    layout.validate();
    const Matrix d = distance_matrix(users, layout.ports);
    PathlossMatrix out{Matrix(users.size(), layout.n_ports())};
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (!(d(i, j) > 0.0))
                throw std::invalid_argument("user " + std::to_string(i + 1) + " coincides with port " +
                                            std::to_string(j + 1));
            const double s = pathloss(d(i, j), layout.pathloss_exponent);
            if (!std::isfinite(s))
                throw std::invalid_argument("pathloss overflow for user " + std::to_string(i + 1));
            out.gains(i, j) = s;
        }
    }
    return out;
}

std::vector<Position> sample_uniform_users(std::size_t k, double cell_radius, RngStream& rng,
                                           std::span<const Position> ports, double exclusion_radius)
{
    if (k == 0)
        throw std::invalid_argument("sample_uniform_users: k must be positive");
    if (!(cell_radius > 0.0))
        throw std::invalid_argument("sample_uniform_users: cell radius must be positive");
    if (exclusion_radius < 0.0 || exclusion_radius >= cell_radius)
        throw std::invalid_argument("sample_uniform_users: exclusion radius out of range");

    auto too_close = [&](const Position& p) {
        if (exclusion_radius <= 0.0)
            return false;
        for (const auto& port : ports)
            if (distance(p, port) < exclusion_radius)
                return true;
        return false;
    };

    std::vector<Position> users;
    users.reserve(k);
    while (users.size() < k) {
        const double radius = cell_radius * std::sqrt(rng.uniform());
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        const Position p{radius * std::cos(angle), radius * std::sin(angle)};
        if (!too_close(p))
            users.push_back(p);
    }
    return users;
}

} // namespace das
