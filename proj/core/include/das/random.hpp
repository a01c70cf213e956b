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
#include <random>

namespace das {

// Deterministic random stream identified by (seed, stream_id).
//
// The engine state is derived from the pair by a SplitMix64 mixing step, so
// stream d of a given seed is independent of how many other streams exist or
// the order in which they are consumed. Only the raw 64-bit engine output is
// used; the floating-point transforms below are written out explicitly so the
// produced values are identical across standard library implementations.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform on (0, 1]; safe to take a logarithm of.
    double uniform_open_left() { return 1.0 - uniform(); }

    // Unit-mean exponential variate.
    double exponential();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

// SplitMix64 finaliser, exposed for tests and for deriving child seeds.
std::uint64_t mix64(std::uint64_t x);

} // namespace das
