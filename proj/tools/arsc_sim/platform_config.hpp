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


#ifndef ARSC_SIM_PLATFORM_CONFIG_HPP
#define ARSC_SIM_PLATFORM_CONFIG_HPP

// Platform configuration file (JSON, explicit units) and calibration-row CSV.
//
// Schema, format tag "arsc-platform/1":
//   reference_clock_mhz   clock at which latency is reported
//   target_fps            default throughput target
//   parallelism           blocks processed concurrently by the DCT hardware
//   cycle_model           { c_sc_cycles, c_ovh_cycles }
//   power_model           { p_static_w, p_dyn_w_per_mhz }
//   aging                 [ { years, freq_mhz }, ... ]
//   calibration_rows      [ { bitwidth, freq_mhz, power_w, latency_s, psnr_db? } ]

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arsc/platform_model.hpp"

namespace arsc::sim {

inline constexpr const char* kPlatformFormat = "arsc-platform/1";

struct ReferenceRow {
  CalibrationRow row;
  std::optional<double> psnr_db;
};

struct PlatformConfig {
  double reference_clock_mhz = 0.0;
  double target_fps = 0.0;
  int parallelism = 8;
  CycleModel cycle_model;
  PowerModel power_model;
  std::vector<AgingAnchor> aging;
  std::vector<ReferenceRow> rows;

  AgingSchedule schedule() const { return AgingSchedule(aging); }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header must name bitwidth, freq_mhz, power_w, latency_s; psnr_db is
/// optional. Column order is free.
std::vector<ReferenceRow> parse_rows_csv(std::istream& in);
std::vector<ReferenceRow> read_rows_csv(const std::filesystem::path& path);

/// Both calibrations; target_fps = 1 / frame period; FPGA aging anchors.
PlatformConfig calibrate_platform(const std::vector<ReferenceRow>& rows);

/// Calibrated on the bundled FPGA operating points.
PlatformConfig default_platform();
const std::vector<ReferenceRow>& builtin_rows();

PlatformConfig parse_platform(std::istream& in);
PlatformConfig read_platform(const std::filesystem::path& path);
std::string dump_platform(const PlatformConfig& cfg);

}  // namespace arsc::sim

#endif  // ARSC_SIM_PLATFORM_CONFIG_HPP
