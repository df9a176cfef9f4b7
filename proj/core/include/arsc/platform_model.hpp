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

#ifndef ARSC_PLATFORM_MODEL_HPP
#define ARSC_PLATFORM_MODEL_HPP

// Timing, power and aging models for choosing an operating point.
//
// Units: frequencies in MHz, power in W, time in s, age in years.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arsc {

/// cycles_per_frame(b) = c_sc * 2^b + c_ovh
struct CycleModel {
  double c_sc = 0.0;
  double c_ovh = 0.0;

  CycleModel() = default;
  CycleModel(double sc, double ovh);
  double cycles_per_frame(int bits) const;
};

/// P(f) = p_static + p_dyn * f
struct PowerModel {
  double p_static = 0.0;
  double p_dyn = 0.0;  // W per MHz

  PowerModel() = default;
  PowerModel(double stat, double dyn);
  double power(double freq_mhz) const noexcept { return p_static + p_dyn * freq_mhz; }
};

struct AgingAnchor {
  double years = 0.0;
  double freq_mhz = 0.0;
};

/// Piecewise-linear frequency degradation over the device lifetime.
class AgingSchedule {
 public:
  explicit AgingSchedule(std::vector<AgingAnchor> anchors);

  /// (0 y, 85.7 MHz) -> (10 y, 75.7 MHz)
  static AgingSchedule fpga_default();
  /// (0 y, 1205 MHz) -> (10 y, 1064 MHz)
  static AgingSchedule asic_default();

  std::span<const AgingAnchor> anchors() const noexcept { return anchors_; }
  double first_year() const noexcept { return anchors_.front().years; }
  double last_year() const noexcept { return anchors_.back().years; }

 private:
  std::vector<AgingAnchor> anchors_;
};

struct OperatingPoint {
  int bits = 0;
  double freq_mhz = 0.0;
  double throughput_fps = 0.0;
  double power_w = 0.0;
  double latency_s = 0.0;
};

/// One row of a published operating-point table: every row sustains the
/// same frame rate, and latency is measured at the reference (highest)
/// clock.
struct CalibrationRow {
  int bits = 0;
  double freq_mhz = 0.0;
  double power_w = 0.0;
  double latency_s = 0.0;
};

/// Maximum relative fit residual accepted by the calibrators.
inline constexpr double kMaxCalibrationResidual = 0.05;

/// Relative slack on the throughput target when judging feasibility.
/// Published tables round to three significant figures, so a bit-width that
/// meets the target in the table may miss it by a fraction of a percent in
/// the fitted model.
inline constexpr double kThroughputSlack = 0.005;

class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

struct CycleCalibration {
  CycleModel model;
  double frame_period_s = 0.0;      // common frame period of the table
  double reference_clock_mhz = 0.0; // clock at which latency was measured
  std::vector<double> residuals;    // (fit - observed) / observed, per row
};

struct PowerCalibration {
  PowerModel model;
  std::vector<double> residuals;
};

/// Least-squares fit of c_sc, c_ovh. Each row contributes
/// cycles = freq * 1e6 * T where T, the common frame period, is the latency
/// of the row at the highest frequency. Throws CalibrationError when fewer
/// than two distinct bit-widths are given or a residual exceeds 5%.
CycleCalibration calibrate_cycles(std::span<const CalibrationRow> rows);

/// Least-squares affine fit of power against frequency.
PowerCalibration calibrate_power(std::span<const CalibrationRow> rows);

double frequency_at_year(const AgingSchedule& s, double years);

/// Frames per second at the given bit-width and clock.
double throughput(const CycleModel& cm, int bits, double freq_mhz);

/// Time per frame at the given clock (inverse throughput).
double effective_latency(const CycleModel& cm, int bits, double freq_mhz);

/// Largest b in 10..6 that sustains target_fps at freq_mhz.
std::optional<int> min_bitwidth_for_throughput(const CycleModel& cm, double freq_mhz,
                                               double target_fps);

double min_frequency_for_throughput(const CycleModel& cm, int bits, double target_fps);

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Aged frequency at `years`, most accurate feasible bit-width, and the
/// resulting operating point. Throws InfeasibleError when even 6 bits miss
/// the target.
OperatingPoint select_config(const CycleModel& cm, const PowerModel& pm,
                             const AgingSchedule& s, double years, double target_fps);

}  // namespace arsc

#endif  // ARSC_PLATFORM_MODEL_HPP
