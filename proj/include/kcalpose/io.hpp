// Copyright 2026 The kcalpose Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small helpers for the comma-separated text files the toolkit reads and
// writes. Fields are never quoted; identifiers containing commas are rejected
// at write time.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kcalpose::io {

std::vector<std::string> read_lines(const std::filesystem::path& path);

// Splits on ',' and trims ASCII whitespace around each field.
std::vector<std::string> split_fields(std::string_view line);

std::string_view trim(std::string_view s) noexcept;

// Strict number parsing: the whole field must be consumed and the value must
// be finite. Returns false on failure instead of throwing so callers can
// attach row context.
bool parse_double(std::string_view field, double& out) noexcept;
bool parse_size(std::string_view field, std::size_t& out) noexcept;

// Shortest representation that round-trips.
std::string format_double(double value);

// Fixed-point with the given number of decimals.
std::string format_fixed(double value, int decimals);

// Writes to a sibling temporary file and renames it over the target, so
// readers never observe a partially written file.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// Throws MalformedRow if the field would break the columnar format.
void check_identifier(std::string_view value, std::string_view what);

}  // namespace kcalpose::io
