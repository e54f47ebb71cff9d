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

#include "zoomtune/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "zoomtune/errors.hpp"
#include "zoomtune/exp3.hpp"
#include "zoomtune/tuners.hpp"

namespace zoomtune {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment", {"kind", "horizon", "repetitions", "seed", "output", "wall_time", "threads"}},
      {"environment",
       {"type", "dim", "arms", "link", "noise_sigma", "users_path", "items_path", "theta_users",
        "family", "changes", "peaks", "change_rounds"}},
      {"algorithm",
       {"name", "lambda", "sigma", "delta", "S", "interval_low", "interval_high",
        "warmup_min_eigen", "glm_ridge", "mle_tol"}},
      {"tuner", {"methods", "candidates", "t1", "t2", "tau0", "grid_resolution"}},
      {"lipschitz", {"methods", "epoch_len", "tau0", "grid_resolution", "p_u"}},
      {"sweep", {"values", "group_window", "group_output"}},
  };
  return keys;
}

std::string trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw InputError("config key '" + key + "': cannot parse '" + value + "' as " + expected);
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
    bad_value(key, raw, "a number");
  }
  return v;
}

std::int64_t to_int(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    bad_value(key, raw, "an integer");
  }
  return v;
}

std::uint64_t to_uint(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    bad_value(key, raw, "an unsigned integer");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, raw, "a boolean");
}

std::vector<std::string> to_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trimmed(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  for (const std::string& s : to_list(raw)) out.push_back(to_double(key, s));
  return out;
}

std::vector<double> to_candidates(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  if (s == "c1" || s == "C1") return candidate_set_c1();
  if (s == "c2" || s == "C2") return candidate_set_c2();
  return to_doubles(key, raw);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

template <typename T>
std::string join_numbers(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::ostringstream os;
    os.precision(17);
    os << items[i];
    out += (i ? "," : "") + os.str();
  }
  return out;
}

// Rejects unknown sections and keys, and copies every value into `c`.
void check_and_apply(const pt::ptree& tree, ExperimentConfig& c) {
  for (const auto& [section, body] : tree) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end()) {
      throw InputError("config: unknown section [" + section + "]");
    }
    if (!body.data().empty() && body.empty()) {
      throw InputError("config: key '" + section + "' must live inside a section");
    }
    for (const auto& [key, node] : body) {
      if (!known->second.contains(key)) {
        throw InputError("config: unknown key '" + section + "." + key + "'");
      }
      const std::string full = section + "." + key;
      const std::string v = node.data();
      if (section == "experiment") {
        if (key == "kind") c.kind = parse_kind(trimmed(v));
        else if (key == "horizon") c.horizon = to_int(full, v);
        else if (key == "repetitions") c.repetitions = to_int(full, v);
        else if (key == "seed") c.seed = to_uint(full, v);
        else if (key == "output") c.output = trimmed(v);
        else if (key == "wall_time") c.wall_time = to_bool(full, v);
        else if (key == "threads") c.threads = static_cast<int>(to_int(full, v));
      } else if (section == "environment") {
        EnvironmentConfig& e = c.environment;
        if (key == "type") e.type = trimmed(v);
        else if (key == "dim") e.dim = static_cast<int>(to_int(full, v));
        else if (key == "arms") e.arms = static_cast<std::size_t>(to_uint(full, v));
        else if (key == "link") e.link = parse_link(trimmed(v));
        else if (key == "noise_sigma") e.noise_sigma = to_double(full, v);
        else if (key == "users_path") e.users_path = trimmed(v);
        else if (key == "items_path") e.items_path = trimmed(v);
        else if (key == "theta_users") e.theta_users = static_cast<std::size_t>(to_uint(full, v));
        else if (key == "family") e.family = parse_family(trimmed(v));
        else if (key == "changes") e.changes = to_int(full, v);
        else if (key == "peaks") e.peaks = to_doubles(full, v);
        else if (key == "change_rounds") {
          e.change_rounds.clear();
          for (const std::string& s : to_list(v)) e.change_rounds.push_back(to_int(full, s));
        }
      } else if (section == "algorithm") {
        AlgorithmConfig& a = c.algorithm;
        if (key == "name") a.name = trimmed(v);
        else if (key == "lambda") a.lambda = to_double(full, v);
        else if (key == "sigma") a.sigma = to_double(full, v);
        else if (key == "delta") a.delta = to_double(full, v);
        else if (key == "S") a.S = to_double(full, v);
        else if (key == "interval_low") a.interval_low = to_double(full, v);
        else if (key == "interval_high") a.interval_high = to_double(full, v);
        else if (key == "warmup_min_eigen") a.warmup_min_eigen = to_double(full, v);
        else if (key == "glm_ridge") a.glm_ridge = to_double(full, v);
        else if (key == "mle_tol") a.mle_tol = to_double(full, v);
      } else if (section == "tuner") {
        TunerConfig& t = c.tuner;
        if (key == "methods") t.methods = to_list(v);
        else if (key == "candidates") t.candidates = to_candidates(full, v);
        else if (key == "t1") t.t1 = trimmed(v) == "auto" ? -1 : to_int(full, v);
        else if (key == "t2") t.t2 = trimmed(v) == "auto" ? -1 : to_int(full, v);
        else if (key == "tau0") t.tau0 = to_double(full, v);
        else if (key == "grid_resolution") t.grid_resolution = to_double(full, v);
      } else if (section == "lipschitz") {
        LipschitzConfig& l = c.lipschitz;
        if (key == "methods") l.methods = to_list(v);
        else if (key == "epoch_len") l.epoch_len = trimmed(v) == "auto" ? -1 : to_int(full, v);
        else if (key == "tau0") l.tau0 = to_double(full, v);
        else if (key == "grid_resolution") l.grid_resolution = to_double(full, v);
        else if (key == "p_u") l.p_u = to_double(full, v);
      } else if (section == "sweep") {
        SweepConfig& s = c.sweep;
        if (key == "values") s.values = to_doubles(full, v);
        else if (key == "group_window") s.group_window = to_int(full, v);
        else if (key == "group_output") s.group_output = trimmed(v);
      }
    }
  }
}

void apply_overrides(pt::ptree& tree, std::span<const std::string> overrides) {
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    const std::string path = eq == std::string::npos ? "" : trimmed(o.substr(0, eq));
    const auto dot = path.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot == 0 ||
        dot + 1 == path.size() || path.find('.', dot + 1) != std::string::npos) {
      throw InputError("override '" + o + "' is not of the form section.key=value");
    }
    tree.put(path, trimmed(o.substr(eq + 1)));
  }
}

ExperimentConfig from_tree(pt::ptree tree, std::span<const std::string> overrides) {
  apply_overrides(tree, overrides);
  ExperimentConfig c;
  check_and_apply(tree, c);
  validate(c);
  return c;
}

}  // namespace

ExperimentKind parse_kind(std::string_view name) {
  if (name == "lipschitz_bench") return ExperimentKind::kLipschitzBench;
  if (name == "glb_bench") return ExperimentKind::kGlbBench;
  if (name == "grid_sweep") return ExperimentKind::kGridSweep;
  throw InputError("unknown experiment kind '" + std::string(name) +
                   "' (expected lipschitz_bench, glb_bench or grid_sweep)");
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kLipschitzBench: return "lipschitz_bench";
    case ExperimentKind::kGlbBench: return "glb_bench";
    case ExperimentKind::kGridSweep: return "grid_sweep";
  }
  return "?";
}

std::vector<double> default_sweep_values() {
  std::vector<double> v{0.1};
  for (int k = 1; k <= 20; ++k) v.push_back(0.5 * k);
  return v;
}

ExperimentConfig parse_config(std::istream& in, std::span<const std::string> overrides) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return from_tree(std::move(tree), overrides);
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  try {
    return parse_config(in, overrides);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

ExperimentConfig config_from_overrides(std::span<const std::string> overrides) {
  return from_tree(pt::ptree{}, overrides);
}

std::int64_t lipschitz_epoch_len(std::int64_t horizon, std::int64_t changes) {
  require(horizon >= 1, "lipschitz_epoch_len: horizon must be >= 1");
  if (changes <= 0) return horizon;
  const double ratio = static_cast<double>(horizon) / static_cast<double>(changes);
  return std::min(horizon, 10 * ceil_int(std::pow(ratio, 0.75)));
}

void validate(const ExperimentConfig& c) {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw InputError("config: " + msg);
  };
  check(c.horizon >= 0, "experiment.horizon must be >= 0");
  check(c.repetitions >= 1, "experiment.repetitions must be >= 1");
  check(c.threads >= 0, "experiment.threads must be >= 0");

  const EnvironmentConfig& e = c.environment;
  check(e.noise_sigma >= 0.0, "environment.noise_sigma must be >= 0");

  if (c.kind == ExperimentKind::kLipschitzBench) {
    const LipschitzConfig& l = c.lipschitz;
    check(!l.methods.empty(), "lipschitz.methods is empty");
    for (const std::string& m : l.methods) {
      check(m == "zooming" || m == "zooming_ts_r" || m == "oracle" || m == "zooming_ts_dr",
            "unknown lipschitz method '" + m +
                "' (expected zooming, zooming_ts_r, oracle or zooming_ts_dr)");
    }
    check(l.tau0 > 0.0, "lipschitz.tau0 must be > 0");
    check(l.grid_resolution >= 0.0 && l.grid_resolution <= 0.1,
          "lipschitz.grid_resolution must lie in [0, 0.1]");
    check(l.p_u >= 0.0, "lipschitz.p_u must be >= 0");
    check(!e.peaks.empty(), "environment.peaks is empty");
    for (double a : e.peaks) check(a >= 0.0 && a <= 1.0, "environment.peaks must lie in [0,1]");
    if (e.change_rounds.empty()) {
      check(e.changes >= 0, "environment.changes must be >= 0");
      check(c.horizon == 0 || e.changes <= c.horizon - 1,
            "environment.changes exceeds horizon - 1");
      check(e.changes == 0 || e.peaks.size() >= 2, "switching needs at least two peaks");
    } else {
      for (std::size_t i = 0; i < e.change_rounds.size(); ++i) {
        check(e.change_rounds[i] >= 1 && e.change_rounds[i] <= c.horizon - 1,
              "environment.change_rounds must lie in [1, horizon - 1]");
        check(i == 0 || e.change_rounds[i] > e.change_rounds[i - 1],
              "environment.change_rounds must be strictly increasing");
      }
      check(e.peaks.size() >= 2, "switching needs at least two peaks");
    }
    return;
  }

  check(e.type == "synthetic" || e.type == "csv",
        "environment.type must be synthetic or csv, got '" + e.type + "'");
  check(e.dim >= 1, "environment.dim must be >= 1");
  check(e.arms >= 1, "environment.arms must be >= 1");
  if (e.type == "csv") {
    check(!e.users_path.empty() && !e.items_path.empty(),
          "environment.users_path and environment.items_path are required for csv");
    check(e.theta_users >= 1, "environment.theta_users must be >= 1");
  }

  const AlgorithmConfig& a = c.algorithm;
  check(a.name == "linucb" || a.name == "lints" || a.name == "ucbglm" || a.name == "laplacets" ||
            a.name == "sgdts",
        "unknown algorithm.name '" + a.name + "'");
  check(a.lambda > 0.0, "algorithm.lambda must be > 0");
  check(a.delta >= 0.0 && a.delta < 1.0, "algorithm.delta must lie in [0, 1)");
  check(a.interval_low <= a.interval_high, "algorithm.interval_low exceeds interval_high");
  check(a.mle_tol > 0.0, "algorithm.mle_tol must be > 0");
  check(a.glm_ridge >= 0.0, "algorithm.glm_ridge must be >= 0");

  const TunerConfig& t = c.tuner;
  check(t.tau0 > 0.0, "tuner.tau0 must be > 0");
  check(t.grid_resolution >= 0.0 && t.grid_resolution <= 0.1,
        "tuner.grid_resolution must lie in [0, 0.1]");
  check(t.t1 < 0 || t.t1 < c.horizon - 1, "tuner.t1 leaves fewer than two tuned rounds");
  check(t.t2 < 0 || t.t2 >= 1, "tuner.t2 must be >= 1");

  if (c.kind == ExperimentKind::kGlbBench) {
    check(!t.methods.empty(), "tuner.methods is empty");
    for (const std::string& m : t.methods) {
      check(m == "cdt" || m == "theory" || m == "syndicated" || m == "tl" || m == "op",
            "unknown tuner method '" + m + "' (expected cdt, theory, syndicated, tl or op)");
      if (m == "cdt") {
        check(c.horizon >= 4 || c.horizon == 0, "cdt needs experiment.horizon >= 4");
      }
    }
  } else {
    check(c.sweep.group_window >= 1, "sweep.group_window must be >= 1");
    for (double v : c.sweep.values) check(v >= 0.0, "sweep.values must be >= 0");
  }
}

GlbOptions glb_options(const ExperimentConfig& c) {
  GlbOptions o;
  o.dim = c.environment.dim;
  o.lambda = c.algorithm.lambda;
  o.link = c.environment.link;
  o.sigma = c.algorithm.sigma >= 0.0 ? c.algorithm.sigma : c.environment.noise_sigma;
  o.delta = c.algorithm.delta;
  o.S = c.algorithm.S;
  o.horizon = std::max<std::int64_t>(c.horizon, 2);
  o.interval_low = c.algorithm.interval_low;
  o.interval_high = c.algorithm.interval_high;
  o.warmup_min_eigen = c.algorithm.warmup_min_eigen;
  o.glm_ridge = c.algorithm.glm_ridge;
  o.mle_tol = c.algorithm.mle_tol;
  return o;
}

std::string to_ini(const ExperimentConfig& c) {
  std::ostringstream os;
  os.precision(17);
  const EnvironmentConfig& e = c.environment;
  const AlgorithmConfig& a = c.algorithm;
  const TunerConfig& t = c.tuner;
  const LipschitzConfig& l = c.lipschitz;
  const SweepConfig& s = c.sweep;
  os << "[experiment]\n"
     << "kind = " << to_string(c.kind) << "\n"
     << "horizon = " << c.horizon << "\n"
     << "repetitions = " << c.repetitions << "\n"
     << "seed = " << c.seed << "\n"
     << "output = " << c.output << "\n"
     << "wall_time = " << (c.wall_time ? "true" : "false") << "\n"
     << "threads = " << c.threads << "\n\n";
  os << "[environment]\n"
     << "type = " << e.type << "\n"
     << "dim = " << e.dim << "\n"
     << "arms = " << e.arms << "\n"
     << "link = " << to_string(e.link) << "\n"
     << "noise_sigma = " << e.noise_sigma << "\n"
     << "users_path = " << e.users_path << "\n"
     << "items_path = " << e.items_path << "\n"
     << "theta_users = " << e.theta_users << "\n"
     << "family = " << to_string(e.family) << "\n"
     << "changes = " << e.changes << "\n"
     << "peaks = " << join_numbers(e.peaks) << "\n"
     << "change_rounds = " << join_numbers(e.change_rounds) << "\n\n";
  os << "[algorithm]\n"
     << "name = " << a.name << "\n"
     << "lambda = " << a.lambda << "\n"
     << "sigma = " << a.sigma << "\n"
     << "delta = " << a.delta << "\n"
     << "S = " << a.S << "\n"
     << "interval_low = " << a.interval_low << "\n"
     << "interval_high = " << a.interval_high << "\n"
     << "warmup_min_eigen = " << a.warmup_min_eigen << "\n"
     << "glm_ridge = " << a.glm_ridge << "\n"
     << "mle_tol = " << a.mle_tol << "\n\n";
  os << "[tuner]\n"
     << "methods = " << join(t.methods) << "\n"
     << "candidates = "
     << join_numbers(t.candidates.empty() ? candidate_set_c1() : t.candidates) << "\n"
     << "t1 = " << (t.t1 < 0 ? std::string("auto") : std::to_string(t.t1)) << "\n"
     << "t2 = " << (t.t2 < 0 ? std::string("auto") : std::to_string(t.t2)) << "\n"
     << "tau0 = " << t.tau0 << "\n"
     << "grid_resolution = " << t.grid_resolution << "\n\n";
  os << "[lipschitz]\n"
     << "methods = " << join(l.methods) << "\n"
     << "epoch_len = " << (l.epoch_len < 0 ? std::string("auto") : std::to_string(l.epoch_len))
     << "\n"
     << "tau0 = " << l.tau0 << "\n"
     << "grid_resolution = " << l.grid_resolution << "\n"
     << "p_u = " << l.p_u << "\n\n";
  os << "[sweep]\n"
     << "values = " << join_numbers(s.values.empty() ? default_sweep_values() : s.values) << "\n"
     << "group_window = " << s.group_window << "\n"
     << "group_output = " << s.group_output << "\n";
  return os.str();
}

}  // namespace zoomtune
