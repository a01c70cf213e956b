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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace das {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Long-format result table with named columns.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::size_t column_index(std::string_view name) const;

    friend bool operator==(const Table&, const Table&) = default;
};

/// Shortest decimal representation that reads back to the same double;
/// integral values keep a trailing ".0".
std::string format_double(double value);

/// RFC 4180 style: comma separated, "\n" line ends, fields quoted only when
/// they contain a comma, quote or newline.
std::string to_csv(const Table& table);
/// Inverse of to_csv. Unquoted fields that parse completely as an integer or
/// a double become numbers; everything else stays a string.
Table parse_csv(std::string_view text);

/// Array of objects, keys in column order, two-space indent, trailing newline.
std::string to_json(const Table& table);
Table parse_json(std::string_view text);

} // namespace das
