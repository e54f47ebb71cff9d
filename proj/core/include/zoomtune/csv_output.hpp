// Copyright 2026 The Zoomtune Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Regret-curve CSV files.
//
//   round,method,mean_cum_regret,std_cum_regret
//   1,cdt,0.12,0.03
//   ...
//   # final,method,mean,std,wall_seconds
//   # final,cdt,41.5,6.2,0.84
//
// Rows are ordered by round, then by method in result order. Numbers use the
// shortest representation that reads back to the same double.

#ifndef ZOOMTUNE_CSV_OUTPUT_HPP_
#define ZOOMTUNE_CSV_OUTPUT_HPP_

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>

#include "zoomtune/harness.hpp"

namespace zoomtune {

std::string format_double(double v);

void write_curves_csv(std::ostream& out, const AggregateResult& result);
/// Writes the file, surfacing I/O failures as InputError naming the path.
void emit_csv(const AggregateResult& result, const std::filesystem::path& path);

/// Curves CSV followed by "# argmin,<value>".
void emit_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path);

/// group,value,centered_mean_reward
void emit_group_csv(std::span<const GroupRow> rows, const std::filesystem::path& path);

/// Reads a curves CSV back. Per-round means/stds and the final block are
/// restored; the `argmin` line, if any, is ignored.
AggregateResult read_curves_csv(std::istream& in);
AggregateResult read_curves_csv(const std::filesystem::path& path);

}  // namespace zoomtune

#endif  // ZOOMTUNE_CSV_OUTPUT_HPP_
