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

#include "das/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace das {

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::invalid_argument("row width does not match the column count");
    rows.push_back(std::move(row));
}

std::size_t Table::column_index(std::string_view name) const
{
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name)
            return c;
    throw std::out_of_range("no column named '" + std::string(name) + "'");
}

std::string format_double(double value)
{
    if (!std::isfinite(value))
        throw std::invalid_argument("cannot serialize a non-finite value");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{})
        throw std::runtime_error("double formatting failed");
    std::string out(buf, end);
    // keep the value a double when it reads back
    if (out.find_first_of(".e") == std::string::npos)
        out += ".0";
    return out;
}

namespace {

std::string cell_text(const Cell& cell)
{
    if (const auto* i = std::get_if<std::int64_t>(&cell))
        return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell))
        return format_double(*d);
    return std::get<std::string>(cell);
}

std::string quote_if_needed(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Cell typed_cell(std::string field, bool quoted)
{
    if (quoted || field.empty())
        return field;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    std::int64_t i = 0;
    if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc{} && p == last)
        return i;
    double d = 0.0;
    if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc{} && p == last)
        return d;
    return field;
}

void append_json(nlohmann::ordered_json& obj, const std::string& key, const Cell& cell)
{
    std::visit([&](const auto& v) { obj[key] = v; }, cell);
}

} // namespace

std::string to_csv(const Table& table)
{
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c)
            out += ',';
        out += quote_if_needed(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ',';
            out += quote_if_needed(cell_text(row[c]));
        }
        out += '\n';
    }
    return out;
}

Table parse_csv(std::string_view text)
{
    std::vector<std::vector<std::pair<std::string, bool>>> records;
    std::vector<std::pair<std::string, bool>> record;
    std::string field;
    bool quoted = false;
    bool in_quotes = false;
    bool pending = false;

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        pending = true;
        if (c == '"' && field.empty()) {
            in_quotes = true;
            quoted = true;
        } else if (c == ',') {
            record.emplace_back(std::move(field), quoted);
            field.clear();
            quoted = false;
        } else if (c == '\n') {
            record.emplace_back(std::move(field), quoted);
            records.push_back(std::move(record));
            record.clear();
            field.clear();
            quoted = false;
            pending = false;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (in_quotes)
        throw std::invalid_argument("unterminated quoted CSV field");
    if (pending) {
        record.emplace_back(std::move(field), quoted);
        records.push_back(std::move(record));
    }
    if (records.empty())
        throw std::invalid_argument("CSV text has no header");

    Table table;
    for (auto& [name, q] : records.front())
        table.columns.push_back(name);
    for (std::size_t r = 1; r < records.size(); ++r) {
        std::vector<Cell> row;
        for (auto& [value, q] : records[r])
            row.push_back(typed_cell(std::move(value), q));
        table.add_row(std::move(row));
    }
    return table;
}

std::string to_json(const Table& table)
{
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c)
            append_json(obj, table.columns[c], row[c]);
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

Table parse_json(std::string_view text)
{
    const auto doc = nlohmann::ordered_json::parse(text);
    if (!doc.is_array())
        throw std::invalid_argument("JSON table must be an array of objects");
    Table table;
    for (const auto& obj : doc) {
        if (!obj.is_object())
            throw std::invalid_argument("JSON table rows must be objects");
        if (table.columns.empty())
            for (const auto& [key, value] : obj.items())
                table.columns.push_back(key);
        std::vector<Cell> row;
        for (const auto& [key, value] : obj.items()) {
            if (value.is_number_integer())
                row.emplace_back(value.get<std::int64_t>());
            else if (value.is_number_float())
                row.emplace_back(value.get<double>());
            else if (value.is_string())
                row.emplace_back(value.get<std::string>());
            else
                throw std::invalid_argument("unsupported JSON cell type for key '" + key + "'");
        }
        table.add_row(std::move(row));
    }
    return table;
}

} // namespace das
