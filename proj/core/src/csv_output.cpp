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

#include "zoomtune/csv_output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "zoomtune/errors.hpp"

namespace zoomtune {
namespace {

constexpr std::string_view kHeader = "round,method,mean_cum_regret,std_cum_regret";
constexpr std::string_view kFinalHeader = "# final,method,mean,std,wall_seconds";
constexpr std::string_view kFinalPrefix = "# final,";
constexpr std::string_view kArgminPrefix = "# argmin,";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_number(const std::string& s, std::int64_t line_no) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw InputError("curves csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  require(ec == std::errc(), "format_double: conversion failed");
  return std::string(buf.data(), end);
}

void write_curves_csv(std::ostream& out, const AggregateResult& result) {
  out << kHeader << '\n';
  std::size_t rounds = 0;
  for (const MethodAggregate& m : result.methods) rounds = std::max(rounds, m.mean.size());
  for (std::size_t t = 0; t < rounds; ++t) {
    for (const MethodAggregate& m : result.methods) {
      if (t >= m.mean.size()) continue;
      out << (t + 1) << ',' << m.method << ',' << format_double(m.mean[t]) << ','
          << format_double(m.std[t]) << '\n';
    }
  }
  if (result.methods.empty()) return;
  out << kFinalHeader << '\n';
  for (const MethodAggregate& m : result.methods) {
    out << kFinalPrefix << m.method << ',' << format_double(m.final_mean) << ','
        << format_double(m.final_std) << ',' << format_double(m.wall_seconds) << '\n';
  }
}

void emit_csv(const AggregateResult& result, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_curves_csv(out, result);
  finish(out, path);
}

void emit_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_curves_csv(out, sweep.curves);
  out << kArgminPrefix << format_double(sweep.argmin) << '\n';
  finish(out, path);
}

void emit_group_csv(std::span<const GroupRow> rows, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "group,value,centered_mean_reward\n";
  for (const GroupRow& r : rows) {
    out << r.group << ',' << format_double(r.value) << ','
        << format_double(r.centered_mean_reward) << '\n';
  }
  finish(out, path);
}

AggregateResult read_curves_csv(std::istream& in) {
  AggregateResult result;
  std::map<std::string, std::size_t> index;
  auto slot = [&](const std::string& name) -> MethodAggregate& {
    auto [it, inserted] = index.try_emplace(name, result.methods.size());
    if (inserted) result.methods.push_back(MethodAggregate{name, {}, {}, 0.0, 0.0, 0.0});
    return result.methods[it->second];
  };

  std::string line;
  std::int64_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kHeader) {
        throw InputError("curves csv: unexpected header '" + line + "'");
      }
      saw_header = true;
      continue;
    }
    if (line == kFinalHeader || line.rfind(kArgminPrefix, 0) == 0) continue;
    if (line.rfind(kFinalPrefix, 0) == 0) {
      const std::vector<std::string> f = split(line.substr(kFinalPrefix.size()));
      if (f.size() != 4) {
        throw InputError("curves csv line " + std::to_string(line_no) + ": bad final row");
      }
      MethodAggregate& m = slot(f[0]);
      m.final_mean = parse_number(f[1], line_no);
      m.final_std = parse_number(f[2], line_no);
      m.wall_seconds = parse_number(f[3], line_no);
      continue;
    }
    const std::vector<std::string> f = split(line);
    if (f.size() != 4) {
      throw InputError("curves csv line " + std::to_string(line_no) + ": expected 4 fields");
    }
    MethodAggregate& m = slot(f[1]);
    const double round = parse_number(f[0], line_no);
    if (round != static_cast<double>(m.mean.size() + 1)) {
      throw InputError("curves csv line " + std::to_string(line_no) + ": rounds out of order");
    }
    m.mean.push_back(parse_number(f[2], line_no));
    m.std.push_back(parse_number(f[3], line_no));
  }
  if (!saw_header) throw InputError("curves csv: missing header");
  return result;
}

AggregateResult read_curves_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_curves_csv(in);
}

}  // namespace zoomtune
