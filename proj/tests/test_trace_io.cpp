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

#include <sstream>

#include <gtest/gtest.h>

#include "restartkit/trace_io.hpp"
#include "test_support.hpp"

namespace restartkit {
namespace {

TEST(TraceIo, RoundTripIsLossless) {
  testing::TestRng rng(41);
  std::vector<TraceRecord> trace;
  for (int row = 0; row < 100; ++row) {
    TraceRecord r;
    r.inner_iteration = row * 3;
    r.restart_index = row / 4;
    r.grid_i = row % 7 - 3;
    r.grid_j = row % 5;
    r.grid_k = row;
    r.objective_value = rng.normal() * 1e3;
    if (row % 2 == 0) r.objective_error = rng.uniform() * 1e-9;
    r.feasibility_gap = row % 3 == 0 ? 0.0 : rng.uniform();
    if (row % 5 != 0) r.reconstruction_error = 1.0 / 3.0 + rng.uniform();
    trace.push_back(r);
  }
  std::stringstream buffer;
  write_trace_csv(buffer, trace);
  EXPECT_EQ(read_trace_csv(buffer), trace);
}

TEST(TraceIo, HeaderAndEmptyOptionalFields) {
  TraceRecord r;
  r.inner_iteration = 5;
  r.objective_value = 0.5;
  std::ostringstream out;
  write_trace_csv(out, {r});
  EXPECT_EQ(out.str(), "t,restart,i,j,k,f,ferr,gap,rerr\n5,0,0,0,0,0.5,,0,\n");
}

TEST(TraceIo, RejectsBadInput) {
  std::stringstream wrong_header("t,f\n1,2\n");
  EXPECT_THROW(read_trace_csv(wrong_header), IngestionError);
  std::stringstream short_row("t,restart,i,j,k,f,ferr,gap,rerr\n1,2,3\n");
  EXPECT_THROW(read_trace_csv(short_row), IngestionError);
  std::stringstream bad_number("t,restart,i,j,k,f,ferr,gap,rerr\n1,0,0,0,0,abc,,0,\n");
  EXPECT_THROW(read_trace_csv(bad_number), IngestionError);
}

TEST(TraceIo, FormatDoubleIsShortest) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace restartkit
