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

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "das/geometry.hpp"

namespace das {

/// Port-to-user assignment. Entry j is the 1-based user served by port j, 0 when the port is off.
class TransmissionMode {
public:
    TransmissionMode() = default;
    explicit TransmissionMode(std::vector<int> assignments);

    const std::vector<int>& assignments() const { return assignments_; }
    std::size_t n_ports() const { return assignments_.size(); }
    int operator[](std::size_t port) const { return assignments_[port]; }

    /// Number of ports that are on (N_A).
    std::size_t active_ports() const;
    /// Number of distinct users served (K_A).
    std::size_t active_users() const;
    /// Largest user index referenced.
    int max_user() const;

    bool is_single_user() const { return active_users() == 1; }

    /// Throws std::invalid_argument unless at least one port is on, all
    /// entries are in [0, k_users] and k_users >= 1.
    void validate(std::size_t k_users) const;

    /// "[2,1]"
    std::string to_string() const;
    /// Accepts "[2,1]", "2,1" or "2 1".
    static TransmissionMode parse(std::string_view text);

    friend auto operator<=>(const TransmissionMode&, const TransmissionMode&) = default;

private:
    std::vector<int> assignments_;
};

/// Serving and interference port sets of a mode. Port indices are 0-based.
struct ModeGroups {
    /// serving_sets[i] = ports serving user i+1.
    std::vector<std::vector<std::size_t>> serving_sets;
    /// All active ports, ascending.
    std::vector<std::size_t> active_set;
    /// interference_sets[i] = active ports not serving user i+1.
    std::vector<std::vector<std::size_t>> interference_sets;

    std::size_t users() const { return serving_sets.size(); }
    bool is_active(std::size_t user) const { return !serving_sets[user].empty(); }
};

ModeGroups derive_groups(const TransmissionMode& mode, std::size_t k_users);

enum class CandidateProvenance { ideal, min_distance };

/// Ordered collection of distinct modes. Insertion order is preserved and is
/// the tie-break order for mode selection.
class CandidateSet {
public:
    explicit CandidateSet(CandidateProvenance provenance) : provenance_(provenance) {}

    /// Returns false (and leaves the set unchanged) for a duplicate.
    bool insert(TransmissionMode mode);
    bool contains(const TransmissionMode& mode) const;

    const std::vector<TransmissionMode>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }
    CandidateProvenance provenance() const { return provenance_; }

    auto begin() const { return modes_.begin(); }
    auto end() const { return modes_.end(); }

private:
    CandidateProvenance provenance_;
    std::vector<TransmissionMode> modes_;
    std::set<TransmissionMode> seen_;
};

/// Raised when a candidate enumeration would exceed the configured cap.
class EnumerationTooLarge : public std::length_error {
public:
    EnumerationTooLarge(std::uint64_t requested, std::uint64_t cap);
    std::uint64_t requested() const { return requested_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t requested_;
    std::uint64_t cap_;
};

inline constexpr std::uint64_t kDefaultCandidateCap = 1'000'000;

/// (K+1)^N - K(2^N - 2) - 1. Throws std::overflow_error past 64 bits.
std::uint64_t ideal_count(std::size_t n_ports, std::size_t k_users);

/// 2^N - N.
std::uint64_t proposed_count(std::size_t n_ports);

/// Every valid mode except single-user modes that leave a port off, in
/// lexicographic order of the assignment vector.
CandidateSet enumerate_ideal(std::size_t n_ports, std::size_t k_users,
                             std::uint64_t cap = kDefaultCandidateCap);

/// Per port, the 1-based nearest user; ties go to the lowest user index.
TransmissionMode nearest_user_mode(const Matrix& distances);

/// Reduced candidate set built from nearest-user pairings and port on/off maskings.
///
/// Starts from the nearest-user mode D0, adds every masking of D0 that keeps
/// at least two ports on, then adds the mode where all ports serve the user
/// holding the globally shortest user-port distance. Duplicates collapse, so
/// the size is 2^N - N when D0 serves two or more users and 2^N - N - 1 when
/// it serves only one (N >= 2; a single port always gives {D0}).
CandidateSet generate_min_distance_candidates(const Matrix& distances,
                                              std::uint64_t cap = kDefaultCandidateCap);

} // namespace das
