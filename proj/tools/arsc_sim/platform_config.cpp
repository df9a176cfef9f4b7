// Copyright 2026 The ARSC Simulator Authors
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


#include "arsc_sim/platform_config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace arsc::sim {
namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, int line_no, const std::string& column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("rows line " + std::to_string(line_no) + ": bad " + column +
                      " value '" + s + "'");
  }
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("platform config: missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("platform config: bad type for '") + key + "'");
  }
}

}  // namespace

std::vector<ReferenceRow> parse_rows_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::map<std::string, std::size_t> col;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const auto names = split_csv_line(line);
    for (std::size_t i = 0; i < names.size(); ++i) col[names[i]] = i;
    break;
  }
  for (const char* needed : {"bitwidth", "freq_mhz", "power_w", "latency_s"}) {
    if (!col.contains(needed)) {
      throw ConfigError(std::string("rows: header lacks column '") + needed + "'");
    }
  }
  std::vector<ReferenceRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const auto cells = split_csv_line(line);
    auto cell = [&](const std::string& name) -> const std::string& {
      const auto i = col.at(name);
      if (i >= cells.size()) {
        throw ConfigError("rows line " + std::to_string(line_no) + ": missing " + name);
      }
      return cells[i];
    };
    ReferenceRow r;
    const double bits = parse_number(cell("bitwidth"), line_no, "bitwidth");
    r.row.bits = static_cast<int>(bits);
    if (r.row.bits != bits) {
      throw ConfigError("rows line " + std::to_string(line_no) + ": bitwidth must be an integer");
    }
    r.row.freq_mhz = parse_number(cell("freq_mhz"), line_no, "freq_mhz");
    r.row.power_w = parse_number(cell("power_w"), line_no, "power_w");
    r.row.latency_s = parse_number(cell("latency_s"), line_no, "latency_s");
    if (col.contains("psnr_db") && !cell("psnr_db").empty()) {
      r.psnr_db = parse_number(cell("psnr_db"), line_no, "psnr_db");
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<ReferenceRow> read_rows_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rows file " + path.string());
  return parse_rows_csv(in);
}

PlatformConfig calibrate_platform(const std::vector<ReferenceRow>& rows) {
  std::vector<CalibrationRow> plain;
  for (const auto& r : rows) plain.push_back(r.row);
  const auto cycles = calibrate_cycles(plain);
  const auto power = calibrate_power(plain);

  PlatformConfig cfg;
  cfg.reference_clock_mhz = cycles.reference_clock_mhz;
  cfg.target_fps = 1.0 / cycles.frame_period_s;
  cfg.cycle_model = cycles.model;
  cfg.power_model = power.model;
  const auto aging = AgingSchedule::fpga_default();
  cfg.aging.assign(aging.anchors().begin(), aging.anchors().end());
  cfg.rows = rows;
  return cfg;
}

const std::vector<ReferenceRow>& builtin_rows() {
  static const std::vector<ReferenceRow> rows = {
      {{10, 85.7, 0.292, 0.139}, 38.12},
      {{9, 43.8, 0.177, 0.071}, 34.68},
      {{8, 22.9, 0.120, 0.037}, 31.27},
      {{7, 12.4, 0.092, 0.020}, 28.70},
      {{6, 7.1, 0.077, 0.012}, 27.45},
  };
  return rows;
}

PlatformConfig default_platform() { return calibrate_platform(builtin_rows()); }

PlatformConfig parse_platform(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("platform config: ") + e.what());
  }
  if (!j.is_object() || require<std::string>(j, "format") != kPlatformFormat) {
    throw ConfigError(std::string("platform config: format must be '") + kPlatformFormat + "'");
  }
  PlatformConfig cfg;
  cfg.reference_clock_mhz = require<double>(j, "reference_clock_mhz");
  cfg.target_fps = require<double>(j, "target_fps");
  cfg.parallelism = require<int>(j, "parallelism");
  if (cfg.parallelism < 1) throw ConfigError("platform config: parallelism must be >= 1");
  if (!(cfg.reference_clock_mhz > 0.0) || !(cfg.target_fps > 0.0)) {
    throw ConfigError("platform config: reference_clock_mhz and target_fps must be positive");
  }
  const auto cm = require<json>(j, "cycle_model");
  const auto pm = require<json>(j, "power_model");
  try {
    cfg.cycle_model = CycleModel(require<double>(cm, "c_sc_cycles"), require<double>(cm, "c_ovh_cycles"));
    cfg.power_model = PowerModel(require<double>(pm, "p_static_w"), require<double>(pm, "p_dyn_w_per_mhz"));
    for (const auto& a : require<json>(j, "aging")) {
      cfg.aging.push_back({require<double>(a, "years"), require<double>(a, "freq_mhz")});
    }
    (void)AgingSchedule(cfg.aging);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("platform config: ") + e.what());
  }
  if (j.contains("calibration_rows")) {
    for (const auto& r : j.at("calibration_rows")) {
      ReferenceRow row;
      row.row = {require<int>(r, "bitwidth"), require<double>(r, "freq_mhz"),
                 require<double>(r, "power_w"), require<double>(r, "latency_s")};
      if (r.contains("psnr_db")) row.psnr_db = require<double>(r, "psnr_db");
      cfg.rows.push_back(row);
    }
  }
  return cfg;
}

PlatformConfig read_platform(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open platform config " + path.string());
  return parse_platform(in);
}

std::string dump_platform(const PlatformConfig& cfg) {
  json j;
  j["format"] = kPlatformFormat;
  j["reference_clock_mhz"] = cfg.reference_clock_mhz;
  j["target_fps"] = cfg.target_fps;
  j["parallelism"] = cfg.parallelism;
  j["cycle_model"] = {{"c_sc_cycles", cfg.cycle_model.c_sc},
                      {"c_ovh_cycles", cfg.cycle_model.c_ovh}};
  j["power_model"] = {{"p_static_w", cfg.power_model.p_static},
                      {"p_dyn_w_per_mhz", cfg.power_model.p_dyn}};
  j["aging"] = json::array();
  for (const auto& a : cfg.aging) j["aging"].push_back({{"years", a.years}, {"freq_mhz", a.freq_mhz}});
  j["calibration_rows"] = json::array();
  for (const auto& r : cfg.rows) {
    json row = {{"bitwidth", r.row.bits},
                {"freq_mhz", r.row.freq_mhz},
                {"power_w", r.row.power_w},
                {"latency_s", r.row.latency_s}};
    if (r.psnr_db) row["psnr_db"] = *r.psnr_db;
    j["calibration_rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

}  // namespace arsc::sim
