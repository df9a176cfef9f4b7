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

#include "arsc/platform_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "arsc/arsc_mac.hpp"

namespace arsc {
namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

void require_bits(int bits) {
  if (bits < AccuracySelect::kMinBitwidth || bits > AccuracySelect::kMaxBitwidth) {
    throw std::invalid_argument("bit-width must be in 6..10, got " + std::to_string(bits));
  }
}

}  // namespace

CycleModel::CycleModel(double sc, double ovh) : c_sc(sc), c_ovh(ovh) {
  if (!(sc > 0.0)) throw std::invalid_argument("CycleModel: c_sc must be positive");
  if (!(ovh >= 0.0)) throw std::invalid_argument("CycleModel: c_ovh must be non-negative");
}

double CycleModel::cycles_per_frame(int bits) const {
  return c_sc * std::ldexp(1.0, bits) + c_ovh;
}

PowerModel::PowerModel(double stat, double dyn) : p_static(stat), p_dyn(dyn) {
  if (!(stat >= 0.0)) throw std::invalid_argument("PowerModel: p_static must be non-negative");
  if (!(dyn > 0.0)) throw std::invalid_argument("PowerModel: p_dyn must be positive");
}

AgingSchedule::AgingSchedule(std::vector<AgingAnchor> anchors) : anchors_(std::move(anchors)) {
  if (anchors_.empty()) throw std::invalid_argument("AgingSchedule: no anchors");
  for (std::size_t i = 1; i < anchors_.size(); ++i) {
    if (!(anchors_[i].years > anchors_[i - 1].years)) {
      throw std::invalid_argument("AgingSchedule: years must be strictly increasing");
    }
    if (anchors_[i].freq_mhz > anchors_[i - 1].freq_mhz) {
      throw std::invalid_argument("AgingSchedule: frequency must not increase with age");
    }
  }
  for (const auto& a : anchors_) {
    if (!(a.freq_mhz > 0.0)) throw std::invalid_argument("AgingSchedule: frequency must be positive");
  }
}

AgingSchedule AgingSchedule::fpga_default() {
  return AgingSchedule({{0.0, 85.7}, {10.0, 75.7}});
}

AgingSchedule AgingSchedule::asic_default() {
  return AgingSchedule({{0.0, 1205.0}, {10.0, 1064.0}});
}

CycleCalibration calibrate_cycles(std::span<const CalibrationRow> rows) {
  std::set<int> distinct;
  for (const auto& r : rows) {
    require_bits(r.bits);
    if (!(r.freq_mhz > 0.0) || !(r.latency_s > 0.0)) {
      throw CalibrationError("calibrate_cycles: frequency and latency must be positive", {});
    }
    distinct.insert(r.bits);
  }
  if (distinct.size() < 2) {
    throw CalibrationError("calibrate_cycles: need rows with at least two distinct bit-widths", {});
  }

  const auto ref = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.freq_mhz < b.freq_mhz;
  });

  CycleCalibration cal;
  cal.frame_period_s = ref->latency_s;
  cal.reference_clock_mhz = ref->freq_mhz;

  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(std::ldexp(1.0, r.bits));
    ys.push_back(r.freq_mhz * 1e6 * cal.frame_period_s);
  }
  const auto fit = fit_line(xs, ys);
  if (!(fit.slope > 0.0) || fit.intercept < 0.0) {
    throw CalibrationError("calibrate_cycles: fit is not physical (c_sc <= 0 or c_ovh < 0)", {});
  }
  cal.model = CycleModel(fit.slope, fit.intercept);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cal.residuals.push_back((cal.model.cycles_per_frame(rows[i].bits) - ys[i]) / ys[i]);
  }
  if (max_abs(cal.residuals) > kMaxCalibrationResidual) {
    throw CalibrationError("calibrate_cycles: residual exceeds 5%", cal.residuals);
  }
  return cal;
}

PowerCalibration calibrate_power(std::span<const CalibrationRow> rows) {
  std::set<double> distinct;
  for (const auto& r : rows) {
    if (!(r.freq_mhz > 0.0) || !(r.power_w > 0.0)) {
      throw CalibrationError("calibrate_power: frequency and power must be positive", {});
    }
    distinct.insert(r.freq_mhz);
  }
  if (distinct.size() < 2) {
    throw CalibrationError("calibrate_power: need at least two distinct frequencies", {});
  }
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r.freq_mhz);
    ys.push_back(r.power_w);
  }
  const auto fit = fit_line(xs, ys);
  if (!(fit.slope > 0.0) || fit.intercept < 0.0) {
    throw CalibrationError("calibrate_power: fit is not physical", {});
  }
  PowerCalibration cal;
  cal.model = PowerModel(fit.intercept, fit.slope);
  for (const auto& r : rows) {
    cal.residuals.push_back((cal.model.power(r.freq_mhz) - r.power_w) / r.power_w);
  }
  if (max_abs(cal.residuals) > kMaxCalibrationResidual) {
    throw CalibrationError("calibrate_power: residual exceeds 5%", cal.residuals);
  }
  return cal;
}

double frequency_at_year(const AgingSchedule& s, double years) {
  const auto a = s.anchors();
  if (years < a.front().years || years > a.back().years) {
    throw std::out_of_range("frequency_at_year: year " + std::to_string(years) +
                            " outside the schedule span");
  }
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (years <= a[i].years) {
      if (years == a[i].years) return a[i].freq_mhz;
      const double t = (years - a[i - 1].years) / (a[i].years - a[i - 1].years);
      return a[i - 1].freq_mhz + t * (a[i].freq_mhz - a[i - 1].freq_mhz);
    }
  }
  return a.front().freq_mhz;
}

double throughput(const CycleModel& cm, int bits, double freq_mhz) {
  require_bits(bits);
  return freq_mhz * 1e6 / cm.cycles_per_frame(bits);
}

double effective_latency(const CycleModel& cm, int bits, double freq_mhz) {
  return 1.0 / throughput(cm, bits, freq_mhz);
}

std::optional<int> min_bitwidth_for_throughput(const CycleModel& cm, double freq_mhz,
                                               double target_fps) {
  for (int b = AccuracySelect::kMaxBitwidth; b >= AccuracySelect::kMinBitwidth; --b) {
    if (throughput(cm, b, freq_mhz) >= target_fps * (1.0 - kThroughputSlack)) return b;
  }
  return std::nullopt;
}

double min_frequency_for_throughput(const CycleModel& cm, int bits, double target_fps) {
  require_bits(bits);
  return target_fps * cm.cycles_per_frame(bits) / 1e6;
}

OperatingPoint select_config(const CycleModel& cm, const PowerModel& pm,
                             const AgingSchedule& s, double years, double target_fps) {
  const double f = frequency_at_year(s, years);
  const auto bits = min_bitwidth_for_throughput(cm, f, target_fps);
  if (!bits) {
    throw InfeasibleError("no bit-width reaches " + std::to_string(target_fps) +
                          " fps at " + std::to_string(f) + " MHz");
  }
  OperatingPoint op;
  op.bits = *bits;
  op.freq_mhz = f;
  op.throughput_fps = throughput(cm, *bits, f);
  op.power_w = pm.power(f);
  op.latency_s = 1.0 / op.throughput_fps;
  return op;
}

}  // namespace arsc
