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


#include "arsc_sim/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "arsc/image.hpp"
#include "arsc/sc_core.hpp"

namespace arsc::sim {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string report;
  std::uint32_t seed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) throw std::runtime_error("cannot write " + path);
}

void emit(const std::string& text, const GlobalOptions& g, std::ostream& out) {
  out << text;
  if (!g.report.empty()) write_file(g.report, text);
}

ReportRow operating_row(const PlatformConfig& cfg, int bits, double target_fps, double psnr_db) {
  ReportRow r;
  r.bits = bits;
  r.freq_mhz = min_frequency_for_throughput(cfg.cycle_model, bits, target_fps);
  r.power_w = cfg.power_model.power(r.freq_mhz);
  r.psnr_db = psnr_db;
  r.latency_s = cfg.cycle_model.cycles_per_frame(bits) / (cfg.reference_clock_mhz * 1e6);
  r.throughput_fps = throughput(cfg.cycle_model, bits, r.freq_mhz);
  return r;
}

PlatformConfig load_platform(const std::string& path) {
  return path.empty() ? default_platform() : read_platform(path);
}

std::string table(const char* header, const std::vector<std::string>& lines) {
  std::string s = std::string(header) + "\n";
  for (const auto& l : lines) s += l + "\n";
  return s;
}

}  // namespace

FrequencyMask parse_mask_spec(std::string_view spec) {
  if (spec == "allpass") return FrequencyMask::all_pass();
  if (spec == "allstop") return FrequencyMask::all_stop();
  constexpr std::string_view kLow = "lowpass:";
  if (spec.starts_with(kLow)) {
    const auto digits = spec.substr(kLow.size());
    int k = 0;
    const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || p != digits.data() + digits.size() || k < 1 || k > kBlockSize) {
      throw UsageError("mask: lowpass:K needs K in 1..8, got '" + std::string(spec) + "'");
    }
    return FrequencyMask::low_pass(k);
  }
  std::ifstream in{std::string(spec)};
  if (!in) throw UsageError("mask: '" + std::string(spec) + "' is not a mask spec or readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  return FrequencyMask::parse(ss.str());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_row(const ReportRow& r) {
  return std::to_string(r.bits) + "," + format_number(r.freq_mhz) + "," +
         format_number(r.power_w) + "," + format_number(r.psnr_db) + "," +
         format_number(r.latency_s) + "," + format_number(r.throughput_fps);
}

std::vector<ReportRow> sweep(const GrayImage& img, const PlatformConfig& cfg,
                             double target_fps, const FrequencyMask& mask,
                             unsigned threads) {
  PipelineOptions opt;
  opt.parallelism = cfg.parallelism;
  opt.threads = threads;
  std::vector<ReportRow> rows;
  for (int b = AccuracySelect::kMaxBitwidth; b >= AccuracySelect::kMinBitwidth; --b) {
    const auto rep = process_image(img, AccuracySelect::from_bitwidth(b), mask, opt);
    rows.push_back(operating_row(cfg, b, target_fps, rep.psnr_vs_reference));
  }
  return rows;
}

std::vector<AgingRow> aging_table(const PlatformConfig& cfg, double target_fps, double years) {
  const auto schedule = cfg.schedule();
  if (years < schedule.first_year() || years > schedule.last_year()) {
    throw UsageError("aging: --years must lie in [" + format_number(schedule.first_year()) +
                     ", " + format_number(schedule.last_year()) + "]");
  }
  std::vector<AgingRow> rows;
  const auto last = static_cast<int>(std::floor(years));
  for (int y = static_cast<int>(std::ceil(schedule.first_year())); y <= last; ++y) {
    AgingRow r;
    r.year = y;
    r.freq_mhz = frequency_at_year(schedule, y);
    try {
      r.point = select_config(cfg.cycle_model, cfg.power_model, schedule, y, target_fps);
    } catch (const InfeasibleError&) {
    }
    rows.push_back(r);
  }
  if (years != last) {
    AgingRow r;
    r.year = years;
    r.freq_mhz = frequency_at_year(schedule, years);
    try {
      r.point = select_config(cfg.cycle_model, cfg.power_model, schedule, years, target_fps);
    } catch (const InfeasibleError&) {
    }
    rows.push_back(r);
  }
  return rows;
}

std::uint32_t reduce_seed(std::uint32_t seed, int n) {
  const std::uint32_t period = (std::uint32_t{1} << n) - 1;
  return seed == 0 ? 1 : (seed - 1) % period + 1;
}

VerifyRow verify_multiplier(int n, std::uint32_t seed) {
  if (n < kMinVerifyWidth || n > kMaxVerifyWidth) {
    throw UsageError("verify-mul: n must be in 3..10, got " + std::to_string(n));
  }
  const std::size_t len = std::size_t{1} << n;
  auto x_cfg = LfsrConfig::maximal(n, reduce_seed(seed, n));
  auto w_cfg = x_cfg;
  for (std::size_t i = 0; i < len / 2; ++i) w_cfg.seed = lfsr_step(w_cfg.seed, x_cfg);

  std::vector<BitStream> det, unary, conv_x, conv_w;
  for (std::uint32_t v = 0; v < len; ++v) {
    const UnsignedFixed f(n, v);
    det.push_back(sng_deterministic(f));
    unary.push_back(unary_gen(v, len));
    conv_x.push_back(sng_conventional(f, len, x_cfg));
    conv_w.push_back(sng_conventional(f, len, w_cfg));
  }

  VerifyRow row;
  row.n = n;
  const double scale = static_cast<double>(len);
  double cbsc_sum = 0.0, lfsr_sum = 0.0;
  for (std::uint32_t x = 0; x < len; ++x) {
    const UnsignedFixed xf(n, x);
    for (std::uint32_t w = 0; w < len; ++w) {
      const auto product = cbsc_multiply(xf, w).product;
      const auto oracle = static_cast<std::uint64_t>(
          stream_to_binary(and_multiply(det[x], unary[w])));
      if (product != oracle) ++row.identity_violations;
      const double exact = static_cast<double>(x) * w / (scale * scale);
      const double cbsc_err = std::fabs(static_cast<double>(product) / scale - exact);
      const double lfsr = static_cast<double>(
          stream_to_binary(and_multiply(conv_x[x], conv_w[w])));
      cbsc_sum += cbsc_err;
      lfsr_sum += std::fabs(lfsr / scale - exact);
      row.cbsc_max_abs_err = std::max(row.cbsc_max_abs_err, cbsc_err);
      ++row.pairs;
    }
  }
  row.cbsc_mean_abs_err = cbsc_sum / static_cast<double>(row.pairs);
  row.lfsr_mean_abs_err = lfsr_sum / static_cast<double>(row.pairs);
  return row;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Accuracy-reconfigurable stochastic computing DCT simulator", "arsc-sim"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--report", g.report, "Also write the CSV report to this path");
  app.add_option("--seed", g.seed, "Seed for the conventional LFSR baseline");
  app.add_option("--threads", g.threads, "Host worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u));

  std::string in_path, out_path, mask_spec{kDefaultMask}, platform_path, rows_path;
  int bits = 10, max_n = 8, size = 256;
  double target = 0.0, years = 10.0;

  auto* compress = app.add_subcommand("compress", "DCT, mask and IDCT one PGM image");
  compress->add_option("--in", in_path)->required();
  compress->add_option("--out", out_path)->required();
  compress->add_option("--bits", bits)->check(CLI::Range(6, 10));
  compress->add_option("--mask", mask_spec, "allpass | allstop | lowpass:K | FILE");
  compress->add_option("--platform", platform_path);

  auto* sweep_cmd = app.add_subcommand("sweep", "Operating point and PSNR for b = 10..6");
  sweep_cmd->add_option("--in", in_path)->required();
  sweep_cmd->add_option("--platform", platform_path);
  sweep_cmd->add_option("--target", target, "Frames per second (default: config target)");
  sweep_cmd->add_option("--mask", mask_spec);

  auto* aging = app.add_subcommand("aging", "Chosen bit-width per year of device aging");
  aging->add_option("--platform", platform_path);
  aging->add_option("--target", target);
  aging->add_option("--years", years);

  auto* verify = app.add_subcommand("verify-mul", "Exhaustive multiplier check for n = 3..N");
  verify->add_option("--max-n", max_n)->check(CLI::Range(kMinVerifyWidth, kMaxVerifyWidth));

  auto* calibrate = app.add_subcommand("calibrate", "Fit cycle and power models to table rows");
  calibrate->add_option("--rows", rows_path)->required();
  calibrate->add_option("--out", out_path)->required();

  auto* refimg = app.add_subcommand("reference-image", "Write the synthetic reference image");
  refimg->add_option("--out", out_path)->required();
  refimg->add_option("--size", size)->check(CLI::Range(8, 4096));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compress->parsed()) {
      const auto mask = parse_mask_spec(mask_spec);
      const auto cfg = load_platform(platform_path);
      const auto img = read_pgm(std::filesystem::path(in_path));
      PipelineOptions opt;
      opt.parallelism = cfg.parallelism;
      opt.threads = g.threads;
      const auto rep = process_image(img, AccuracySelect::from_bitwidth(bits), mask, opt);
      write_pgm(std::filesystem::path(out_path), rep.output);
      const auto row = operating_row(cfg, bits, cfg.target_fps, rep.psnr_vs_input);
      out << "psnr_vs_input_db " << format_number(rep.psnr_vs_input) << "\n"
          << "psnr_vs_reference_db " << format_number(rep.psnr_vs_reference) << "\n"
          << "cycles_fixed " << rep.total_cycles_fixed << "\n"
          << "cycles_data " << rep.total_cycles_data << "\n"
          << "clamps " << rep.clamp_count << "\n";
      if (!g.report.empty()) write_file(g.report, table(kReportHeader, {format_row(row)}));
      return 0;
    }
    if (sweep_cmd->parsed()) {
      const auto mask = parse_mask_spec(mask_spec);
      const auto cfg = load_platform(platform_path);
      const double fps = target > 0.0 ? target : cfg.target_fps;
      const auto img = read_pgm(std::filesystem::path(in_path));
      std::vector<std::string> lines;
      for (const auto& r : sweep(img, cfg, fps, mask, g.threads)) lines.push_back(format_row(r));
      emit(table(kReportHeader, lines), g, out);
      return 0;
    }
    if (aging->parsed()) {
      const auto cfg = load_platform(platform_path);
      const double fps = target > 0.0 ? target : cfg.target_fps;
      std::vector<std::string> lines;
      for (const auto& r : aging_table(cfg, fps, years)) {
        std::string l = format_number(r.year) + ",";
        if (r.point) {
          const auto& p = *r.point;
          l += std::to_string(p.bits) + "," + format_number(p.freq_mhz) + "," +
               format_number(p.power_w) + "," + format_number(p.latency_s) + "," +
               format_number(p.throughput_fps) + ",1";
        } else {
          l += "," + format_number(r.freq_mhz) + "," +
               format_number(cfg.power_model.power(r.freq_mhz)) + ",,,0";
        }
        lines.push_back(l);
      }
      emit(table(kAgingHeader, lines), g, out);
      return 0;
    }
    if (verify->parsed()) {
      std::vector<std::string> lines;
      std::uint64_t violations = 0;
      for (int n = kMinVerifyWidth; n <= max_n; ++n) {
        const auto r = verify_multiplier(n, g.seed);
        violations += r.identity_violations;
        lines.push_back(std::to_string(r.n) + "," + std::to_string(r.pairs) + "," +
                        std::to_string(r.identity_violations) + "," +
                        format_number(r.cbsc_max_abs_err) + "," +
                        format_number(r.cbsc_mean_abs_err) + "," +
                        format_number(r.lfsr_mean_abs_err));
      }
      emit(table(kVerifyHeader, lines), g, out);
      if (violations != 0) {
        err << "verify-mul: " << violations << " identity violations\n";
        return 1;
      }
      return 0;
    }
    if (calibrate->parsed()) {
      const auto rows = read_rows_csv(rows_path);
      PlatformConfig cfg;
      try {
        cfg = calibrate_platform(rows);
      } catch (const CalibrationError& e) {
        err << "calibrate: " << e.what() << "\n";
        for (std::size_t i = 0; i < e.residuals().size(); ++i) {
          err << "  row " << i + 1 << " (b=" << rows[i].row.bits
              << ") residual " << format_number(e.residuals()[i]) << "\n";
        }
        return 1;
      }
      write_file(out_path, dump_platform(cfg));
      std::vector<CalibrationRow> plain;
      for (const auto& r : rows) plain.push_back(r.row);
      const auto cyc = calibrate_cycles(plain);
      const auto pw = calibrate_power(plain);
      err << "c_sc " << format_number(cfg.cycle_model.c_sc) << " c_ovh "
          << format_number(cfg.cycle_model.c_ovh) << " ratio "
          << format_number(cfg.cycle_model.c_ovh / cfg.cycle_model.c_sc) << "\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        err << "  b=" << rows[i].row.bits << " cycle residual "
            << format_number(cyc.residuals[i]) << " power residual "
            << format_number(pw.residuals[i]) << "\n";
      }
      std::vector<std::string> lines;
      for (const auto& r : rows) {
        lines.push_back(format_row(operating_row(cfg, r.row.bits, cfg.target_fps,
                                                 r.psnr_db.value_or(NAN))));
      }
      emit(table(kReportHeader, lines), g, out);
      return 0;
    }
    if (refimg->parsed()) {
      write_pgm(std::filesystem::path(out_path), make_reference_image(size));
      return 0;
    }
  } catch (const UsageError& e) {
    err << "arsc-sim: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "arsc-sim: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace arsc::sim
