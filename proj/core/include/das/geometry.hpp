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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "das/random.hpp"

namespace das {

/// Point in the cell plane. Coordinates are dimensionless cell units.
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

/// Cell radius used by the reference layout; places the port ring at radius 4.
inline const double kDefaultCellRadius = std::sqrt(112.0 / 3.0);
inline constexpr double kDefaultPathlossExponent = 3.0;

/// Ratio of the port-ring radius to the cell radius, sqrt(3/7).
inline const double kPortRingFraction = std::sqrt(3.0 / 7.0);

/// Single-cell layout: cell radius, port positions and the pathloss exponent.
struct CellLayout {
    double cell_radius = kDefaultCellRadius;
    std::vector<Position> ports;
    double pathloss_exponent = kDefaultPathlossExponent;

    std::size_t n_ports() const { return ports.size(); }

    /// Ports on the canonical ring of radius sqrt(3/7) * cell_radius.
    static CellLayout canonical(std::size_t n_ports,
                                double cell_radius = kDefaultCellRadius,
                                double pathloss_exponent = kDefaultPathlossExponent);

    /// Throws std::invalid_argument when any invariant is violated.
    void validate() const;
};

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const
    {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> data() const { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// K x N large-scale gains; entry (i, j) is d(i, j)^-p for user i and port j.
struct PathlossMatrix {
    Matrix gains;

    std::size_t users() const { return gains.rows(); }
    std::size_t ports() const { return gains.cols(); }
    double operator()(std::size_t i, std::size_t j) const { return gains(i, j); }
    std::span<const double> row(std::size_t i) const { return gains.row(i); }
};

/// Transmit power per port and receiver noise variance, both linear.
struct LinkBudget {
    double power = 1.0;
    double noise_variance = 1.0;

    double snr_linear() const { return power / noise_variance; }
    double snr_db() const { return 10.0 * std::log10(snr_linear()); }

    /// Budget with unit noise variance and power set from an SNR in dB.
    static LinkBudget from_snr_db(double snr_db);

    void validate() const;
};

/// Port positions on the ring: port j (0-based) at angle 2*pi*j/n, counter-clockwise.
std::vector<Position> place_ports(std::size_t n_ports, double cell_radius);

/// distance^-exponent. Throws std::invalid_argument for distance <= 0.
double pathloss(double distance, double exponent);

/// Pathloss in dB, -10*log10(pathloss(distance, exponent)).
double pathloss_db(double distance, double exponent);

/// User-to-port distances, K x N.
Matrix distance_matrix(std::span<const Position> users, std::span<const Position> ports);

/// Throws std::invalid_argument when a user coincides with a port.
PathlossMatrix build_pathloss_matrix(std::span<const Position> users, const CellLayout& layout);

/// k positions uniform over the disk of radius cell_radius.
///
/// Each user costs exactly two uniform draws (radius by inverse CDF, then
/// angle) unless exclusion_radius > 0, in which case positions closer than
/// exclusion_radius to any of the given ports are redrawn.
std::vector<Position> sample_uniform_users(std::size_t k, double cell_radius, RngStream& rng,
                                           std::span<const Position> ports = {},
                                           double exclusion_radius = 0.0);

} // namespace das
