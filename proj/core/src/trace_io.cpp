// Copyright 2026 The restartkit Authors
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

#include "restartkit/trace_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace restartkit {
namespace {

template <typename T>
T parse_field(const std::string& field, std::size_t line) {
  T value{};
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw IngestionError("trace line " + std::to_string(line) + ": bad field '" +
                         field + "'");
  }
  return value;
}

std::optional<double> parse_optional(const std::string& field, std::size_t line) {
  if (field.empty()) return std::nullopt;
  return parse_field<double>(field, line);
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << kTraceHeader << '\n';
  for (const TraceRecord& r : trace) {
    out << r.inner_iteration << ',' << r.restart_index << ',' << r.grid_i << ','
        << r.grid_j << ',' << r.grid_k << ',' << format_double(r.objective_value) << ',';
    if (r.objective_error) out << format_double(*r.objective_error);
    out << ',' << format_double(r.feasibility_gap) << ',';
    if (r.reconstruction_error) out << format_double(*r.reconstruction_error);
    out << '\n';
  }
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw IngestionError("trace header must be '" + std::string(kTraceHeader) + "'");
  }
  std::vector<TraceRecord> out;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 9) {
      throw IngestionError("trace line " + std::to_string(number) + " has " +
                           std::to_string(fields.size()) + " fields, expected 9");
    }
    TraceRecord r;
    r.inner_iteration = parse_field<std::int64_t>(fields[0], number);
    r.restart_index = parse_field<std::int64_t>(fields[1], number);
    r.grid_i = parse_field<int>(fields[2], number);
    r.grid_j = parse_field<int>(fields[3], number);
    r.grid_k = parse_field<std::int64_t>(fields[4], number);
    r.objective_value = parse_field<double>(fields[5], number);
    r.objective_error = parse_optional(fields[6], number);
    r.feasibility_gap = parse_field<double>(fields[7], number);
    r.reconstruction_error = parse_optional(fields[8], number);
    out.push_back(r);
  }
  return out;
}

}  // namespace restartkit
