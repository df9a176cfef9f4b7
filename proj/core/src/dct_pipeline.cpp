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

#include "arsc/dct_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace arsc {
namespace {

constexpr int N = kBlockSize;

const CoefficientTable& coefficient_table(int bits) {
  static const auto tables = [] {
    std::array<CoefficientTable, AccuracySelect::kCodeCount> t;
    for (int code = 0; code < AccuracySelect::kCodeCount; ++code) {
      t[code] = quantize_coefficients(AccuracySelect(code).bitwidth());
    }
    return t;
  }();
  return tables[AccuracySelect::from_bitwidth(bits).code()];
}

template <typename Vec, typename Fn>
void for_each_line(std::array<Vec, N>& block, bool columns, Fn&& fn) {
  for (int line = 0; line < N; ++line) {
    Vec v;
    for (int j = 0; j < N; ++j) v[j] = columns ? block[j][line] : block[line][j];
    v = fn(v);
    for (int j = 0; j < N; ++j) (columns ? block[j][line] : block[line][j]) = v[j];
  }
}

FixedPass2d fixed_2d(const FixedBlock& in, AccuracySelect sel, bool columns_first,
                     FixedPass1d (*pass)(const FixedVector&, AccuracySelect)) {
  FixedPass2d r;
  r.block = in;  // doubles as the intermediate buffer
  auto run = [&](const FixedVector& v) {
    auto p = pass(v, sel);
    r.cycles_fixed += p.cycles_fixed;
    r.cycles_data += p.cycles_data;
    r.clamps += p.clamps;
    return p.out;
  };
  for_each_line(r.block, columns_first, run);
  for_each_line(r.block, !columns_first, run);
  return r;
}

RealBlock real_2d(const RealBlock& in, bool columns_first,
                  RealVector (*pass)(const RealVector&)) {
  RealBlock b = in;
  for_each_line(b, columns_first, pass);
  for_each_line(b, !columns_first, pass);
  return b;
}

}  // namespace

FrequencyMask FrequencyMask::all_pass() { return low_pass(N); }

FrequencyMask FrequencyMask::all_stop() { return FrequencyMask{}; }

FrequencyMask FrequencyMask::low_pass(int k) {
  if (k < 0 || k > N) throw std::invalid_argument("low_pass: K must be in 0..8");
  FrequencyMask m;
  for (int u = 0; u < N; ++u) {
    for (int v = 0; v < N; ++v) m.set(u, v, u < k && v < k);
  }
  return m;
}

FrequencyMask FrequencyMask::parse(std::string_view text) {
  FrequencyMask m;
  int row = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::string cells;
    for (char c : line) {
      if (c == '0' || c == '1') {
        cells.push_back(c);
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("mask: unexpected character '" + std::string(1, c) + "'");
      }
    }
    if (cells.empty()) continue;
    if (cells.size() != N || row >= N) {
      throw std::invalid_argument("mask: expected 8 rows of 8 binary digits");
    }
    for (int v = 0; v < N; ++v) m.set(row, v, cells[v] == '1');
    ++row;
  }
  if (row != N) throw std::invalid_argument("mask: expected 8 rows, got " + std::to_string(row));
  return m;
}

int FrequencyMask::kept() const noexcept {
  int n = 0;
  for (const auto& r : bits_) {
    for (auto b : r) n += b;
  }
  return n;
}

std::string FrequencyMask::to_string() const {
  std::string s;
  for (const auto& r : bits_) {
    for (auto b : r) s.push_back(b ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

double dct_basis(int k, int i) {
  if (k == 0) return 1.0 / std::sqrt(double{N});
  return std::sqrt(2.0 / N) * std::cos((2 * i + 1) * k * std::numbers::pi / (2.0 * N));
}

RealVector dct1d_ref(const RealVector& a) {
  RealVector f{};
  for (int k = 0; k < N; ++k) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += a[i] * dct_basis(k, i);
    f[k] = s;
  }
  return f;
}

RealVector idct1d_ref(const RealVector& f) {
  RealVector a{};
  for (int i = 0; i < N; ++i) {
    double s = 0.0;
    for (int k = 0; k < N; ++k) s += f[k] * dct_basis(k, i);
    a[i] = s;
  }
  return a;
}

RealBlock dct2d_ref(const RealBlock& block) {
  return real_2d(block, kForwardPassOrder == PassOrder::kColumnsFirst, &dct1d_ref);
}

RealBlock idct2d_ref(const RealBlock& freq) {
  return real_2d(freq, kForwardPassOrder != PassOrder::kColumnsFirst, &idct1d_ref);
}

CoefficientTable quantize_coefficients(int bits) {
  if (bits < AccuracySelect::kMinBitwidth || bits > AccuracySelect::kMaxBitwidth) {
    throw std::invalid_argument("quantize_coefficients: bit-width must be in 6..10");
  }
  CoefficientTable t;
  for (int k = 0; k < N; ++k) {
    for (int i = 0; i < N; ++i) t[k][i] = SignMagnitude::from_real(dct_basis(k, i), bits);
  }
  return t;
}

FixedPass1d dct1d_sc(const FixedVector& a, AccuracySelect sel) {
  const auto& table = coefficient_table(sel.bitwidth());
  FixedPass1d r;
  for (int k = 0; k < N; ++k) {
    const auto m = mac(a, table[k], sel, MacScaling{kInterStageShift});
    r.out[k] = m.value;
    r.cycles_fixed += m.cycles_fixed;
    r.cycles_data += m.cycles_data;
    r.clamps += m.clamped ? 1 : 0;
  }
  return r;
}

FixedPass1d idct1d_sc(const FixedVector& f, AccuracySelect sel) {
  const auto& table = coefficient_table(sel.bitwidth());
  FixedPass1d r;
  for (int i = 0; i < N; ++i) {
    std::array<SignMagnitude, N> column;
    for (int k = 0; k < N; ++k) column[k] = table[k][i];
    const auto m = mac(f, column, sel, MacScaling{-kInterStageShift});
    r.out[i] = m.value;
    r.cycles_fixed += m.cycles_fixed;
    r.cycles_data += m.cycles_data;
    r.clamps += m.clamped ? 1 : 0;
  }
  return r;
}

FixedPass2d dct2d(const FixedBlock& block, AccuracySelect sel) {
  return fixed_2d(block, sel, kForwardPassOrder == PassOrder::kColumnsFirst, &dct1d_sc);
}

FixedPass2d idct2d(const FixedBlock& freq, AccuracySelect sel) {
  return fixed_2d(freq, sel, kForwardPassOrder != PassOrder::kColumnsFirst, &idct1d_sc);
}

FixedBlock apply_mask(const FixedBlock& freq, const FrequencyMask& mask) {
  FixedBlock out = freq;
  for (int u = 0; u < N; ++u) {
    for (int v = 0; v < N; ++v) {
      if (!mask.keeps(u, v)) out[u][v] = SignMagnitude(false, UnsignedFixed(freq[u][v].width(), 0));
    }
  }
  return out;
}

RealBlock apply_mask(const RealBlock& freq, const FrequencyMask& mask) {
  RealBlock out = freq;
  for (int u = 0; u < N; ++u) {
    for (int v = 0; v < N; ++v) out[u][v] *= mask.keeps(u, v) ? 1.0 : 0.0;
  }
  return out;
}

SignMagnitude normalize_pixel(std::uint8_t p, int width) {
  if (width < 8) throw std::invalid_argument("normalize_pixel: width must be >= 8");
  return SignMagnitude(false, UnsignedFixed(width, std::uint32_t{p} << (width - 8)));
}

std::uint8_t denormalize_pixel(const SignMagnitude& v) {
  if (v.negative || v.mag.raw() == 0) return 0;
  const int shift = v.width() - 8;
  std::uint32_t p = v.mag.raw();
  if (shift > 0) p = (p + (std::uint32_t{1} << (shift - 1))) >> shift;
  return static_cast<std::uint8_t>(std::min<std::uint32_t>(p, 255));
}

std::uint8_t denormalize_pixel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v * 256.0), 0L, 255L));
}

PipelineReport process_image(const GrayImage& img, AccuracySelect sel,
                             const FrequencyMask& mask, const PipelineOptions& options) {
  if (img.empty()) throw std::invalid_argument("process_image: empty image");
  if (options.parallelism < 1) throw std::invalid_argument("process_image: parallelism must be >= 1");
  const int m = options.data_width;
  if (m < sel.bitwidth()) {
    throw std::invalid_argument("process_image: data width below the active bit-width");
  }

  const GrayImage padded = pad_edge(img, N);
  const int bx = padded.width / N;
  const int by = padded.height / N;
  const std::size_t blocks = static_cast<std::size_t>(bx) * static_cast<std::size_t>(by);

  GrayImage out(padded.width, padded.height);
  struct BlockStats {
    std::uint64_t cycles_fixed = 0;
    std::uint64_t cycles_data = 0;
    std::uint64_t clamps = 0;
  };
  std::vector<BlockStats> stats(blocks);

  auto process_block = [&](std::size_t index) {
    const int ox = static_cast<int>(index % bx) * N;
    const int oy = static_cast<int>(index / bx) * N;
    FixedBlock in;
    for (int y = 0; y < N; ++y) {
      for (int x = 0; x < N; ++x) in[y][x] = normalize_pixel(padded.at(ox + x, oy + y), m);
    }
    const auto fwd = dct2d(in, sel);
    const auto inv = idct2d(apply_mask(fwd.block, mask), sel);
    for (int y = 0; y < N; ++y) {
      for (int x = 0; x < N; ++x) out.at(ox + x, oy + y) = denormalize_pixel(inv.block[y][x]);
    }
    stats[index] = {fwd.cycles_fixed + inv.cycles_fixed, fwd.cycles_data + inv.cycles_data,
                    static_cast<std::uint64_t>(fwd.clamps + inv.clamps)};
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(blocks)));
  if (threads == 1) {
    for (std::size_t i = 0; i < blocks; ++i) process_block(i);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < blocks; i += threads) process_block(i);
      });
    }
  }

  PipelineReport report;
  std::uint64_t cycles = 0;
  for (const auto& s : stats) {
    cycles += s.cycles_fixed;
    report.total_cycles_data += s.cycles_data;
    report.clamp_count += s.clamps;
  }
  const auto par = static_cast<std::uint64_t>(options.parallelism);
  report.total_cycles_fixed = (cycles + par - 1) / par;
  report.output = crop(out, img.width, img.height);
  report.reference = reference_pipeline(img, mask);
  report.psnr_vs_input = psnr(report.output, img);
  report.psnr_vs_reference = psnr(report.output, report.reference);
  return report;
}

GrayImage reference_pipeline(const GrayImage& img, const FrequencyMask& mask) {
  if (img.empty()) throw std::invalid_argument("reference_pipeline: empty image");
  const GrayImage padded = pad_edge(img, N);
  GrayImage out(padded.width, padded.height);
  constexpr double kStageScale = 1.0 / (1 << kInterStageShift);

  auto scaled = [](RealVector (*pass)(const RealVector&), double factor) {
    return [pass, factor](const RealVector& v) {
      auto r = pass(v);
      for (auto& x : r) x *= factor;
      return r;
    };
  };
  const bool cols_first = kForwardPassOrder == PassOrder::kColumnsFirst;

  for (int oy = 0; oy < padded.height; oy += N) {
    for (int ox = 0; ox < padded.width; ox += N) {
      RealBlock b;
      for (int y = 0; y < N; ++y) {
        for (int x = 0; x < N; ++x) b[y][x] = padded.at(ox + x, oy + y) / 256.0;
      }
      for_each_line(b, cols_first, scaled(&dct1d_ref, kStageScale));
      for_each_line(b, !cols_first, scaled(&dct1d_ref, kStageScale));
      b = apply_mask(b, mask);
      for_each_line(b, !cols_first, scaled(&idct1d_ref, 1.0 / kStageScale));
      for_each_line(b, cols_first, scaled(&idct1d_ref, 1.0 / kStageScale));
      for (int y = 0; y < N; ++y) {
        for (int x = 0; x < N; ++x) out.at(ox + x, oy + y) = denormalize_pixel(b[y][x]);
      }
    }
  }
  return crop(out, img.width, img.height);
}

}  // namespace arsc
