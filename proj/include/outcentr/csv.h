/*
 * Copyright 2026 The OutCenTR Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal RFC 4180 style reader/writer: comma separated, optional double
// quotes with "" escapes, LF or CRLF line endings.

#ifndef OUTCENTR_CSV_H_
#define OUTCENTR_CSV_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace outcentr::csv {

using Row = std::vector<std::string>;

// Returns nullopt at end of input. Blank lines are skipped.
std::optional<Row> read_row(std::istream& in);
std::vector<Row> read_all(std::istream& in);

std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

// Parses the whole field as a finite double; surrounding blanks allowed.
std::optional<double> parse_double(std::string_view field);
std::string_view trim(std::string_view s);

// Shortest representation that round-trips exactly.
std::string format_double(double v);

}  // namespace outcentr::csv

#endif  // OUTCENTR_CSV_H_
