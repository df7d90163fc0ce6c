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

// Trace CSV with header t,restart,i,j,k,f,ferr,gap,rerr. Missing optional
// columns are written as empty fields. Doubles use the shortest round-trip
// representation, so reading a trace back is lossless.

#ifndef RESTARTKIT_TRACE_IO_HPP_
#define RESTARTKIT_TRACE_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "restartkit/core.hpp"

namespace restartkit {

inline constexpr const char* kTraceHeader = "t,restart,i,j,k,f,ferr,gap,rerr";

std::string format_double(double value);

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> read_trace_csv(std::istream& in);

}  // namespace restartkit

#endif  // RESTARTKIT_TRACE_IO_HPP_
