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


#ifndef ARSC_SIM_COMMANDS_HPP
#define ARSC_SIM_COMMANDS_HPP

// Subcommands of arsc-sim. Every command writes its table as CSV to the
// output stream and, when a report path is given, byte-identically to that
// file. Exit status is 0 on success, 1 on a validation or runtime failure and
// 2 on a usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arsc/dct_pipeline.hpp"
#include "arsc_sim/platform_config.hpp"

namespace arsc::sim {

inline constexpr const char* kReportHeader =
    "bitwidth,freq_mhz,power_w,psnr_db,latency_s,throughput_fps";
inline constexpr const char* kAgingHeader =
    "year,bitwidth,freq_mhz,power_w,latency_s,throughput_fps,feasible";
inline constexpr const char* kVerifyHeader =
    "n,pairs,identity_violations,cbsc_max_abs_err,cbsc_mean_abs_err,lfsr_mean_abs_err";

inline constexpr int kMinVerifyWidth = 3;
inline constexpr int kMaxVerifyWidth = 10;
inline constexpr std::string_view kDefaultMask = "lowpass:4";

/// "allpass", "allstop", "lowpass:K" (K in 1..8) or a path to a mask file.
FrequencyMask parse_mask_spec(std::string_view spec);

/// %.6g; "inf" for infinite and empty for NaN values.
std::string format_number(double v);

struct ReportRow {
  int bits = 0;
  double freq_mhz = 0.0;
  double power_w = 0.0;
  double psnr_db = 0.0;
  double latency_s = 0.0;
  double throughput_fps = 0.0;
};

std::string format_row(const ReportRow& r);

/// For each b = 10..6: minimum clock for target_fps, power at that clock,
/// PSNR against the floating-point pipeline, latency at the reference
/// clock, and the resulting throughput.
std::vector<ReportRow> sweep(const GrayImage& img, const PlatformConfig& cfg,
                             double target_fps, const FrequencyMask& mask,
                             unsigned threads);

struct AgingRow {
  double year = 0.0;
  std::optional<OperatingPoint> point;  // empty when no width is feasible
  double freq_mhz = 0.0;
};

std::vector<AgingRow> aging_table(const PlatformConfig& cfg, double target_fps,
                                  double years);

struct VerifyRow {
  int n = 0;
  std::uint64_t pairs = 0;
  std::uint64_t identity_violations = 0;
  double cbsc_max_abs_err = 0.0;
  double cbsc_mean_abs_err = 0.0;
  double lfsr_mean_abs_err = 0.0;
};

/// Exhaustive over x, w_s in [0, 2^n). Errors are in value units against
/// x * w_s / 4^n. The conventional baseline uses the maximal LFSR of width n
/// seeded with the reduced seed for x and the same register 2^(n-1) steps
/// later for w.
VerifyRow verify_multiplier(int n, std::uint32_t seed);

/// Seed reduced into the non-zero LFSR state range [1, 2^n - 1].
std::uint32_t reduce_seed(std::uint32_t seed, int n);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arsc::sim

#endif  // ARSC_SIM_COMMANDS_HPP
