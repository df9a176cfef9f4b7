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

#ifndef ARSC_DCT_PIPELINE_HPP
#define ARSC_DCT_PIPELINE_HPP

// 8x8 DCT/IDCT image filter built on the ARSC MAC.
//
// Fixed-point data is SignMagnitude at the interface width m (default 10).
// Every 1D pass divides its output by 4 (kInterStageShift) before it is
// buffered, which keeps all multiplier operands inside [0, 1); the inverse
// passes multiply by 4 again, so forward+inverse has unit gain.
//
// Blocks are indexed [row][col]. In frequency space [u][v] means vertical
// frequency u, horizontal frequency v.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "arsc/arsc_mac.hpp"
#include "arsc/image.hpp"

namespace arsc {

inline constexpr int kBlockSize = 8;
inline constexpr int kInterStageShift = 2;
/// Blocks streamed into the 2D DCT hardware at once.
inline constexpr int kDefaultParallelism = 8;

using RealVector = std::array<double, kBlockSize>;
using RealBlock = std::array<RealVector, kBlockSize>;
using FixedVector = std::array<SignMagnitude, kBlockSize>;
using FixedBlock = std::array<FixedVector, kBlockSize>;
/// [k][i]: basis factor of input sample i in output frequency k.
using CoefficientTable = std::array<std::array<SignMagnitude, kBlockSize>, kBlockSize>;

enum class PassOrder { kColumnsFirst, kRowsFirst };
/// Forward transform order; the inverse runs the opposite order.
inline constexpr PassOrder kForwardPassOrder = PassOrder::kColumnsFirst;

class FrequencyMask {
 public:
  static FrequencyMask all_pass();
  static FrequencyMask all_stop();
  /// Keeps u < k and v < k.
  static FrequencyMask low_pass(int k);
  /// Eight lines of eight '0'/'1' characters; blank lines and '#' comments
  /// are ignored.
  static FrequencyMask parse(std::string_view text);

  bool keeps(int u, int v) const { return bits_[u][v] != 0; }
  void set(int u, int v, bool keep) { bits_[u][v] = keep ? 1 : 0; }
  int kept() const noexcept;
  std::string to_string() const;

  bool operator==(const FrequencyMask&) const = default;

 private:
  std::array<std::array<std::uint8_t, kBlockSize>, kBlockSize> bits_{};
};

/// Orthonormal DCT-II basis factor: 1/sqrt(N) for k = 0, otherwise
/// sqrt(2/N) cos((2i+1) k pi / 2N).
double dct_basis(int k, int i);

RealVector dct1d_ref(const RealVector& a);
RealVector idct1d_ref(const RealVector& f);
RealBlock dct2d_ref(const RealBlock& block);
RealBlock idct2d_ref(const RealBlock& freq);

/// Sign and round-to-nearest b-bit magnitude of every basis factor.
CoefficientTable quantize_coefficients(int bits);

struct FixedPass1d {
  FixedVector out;
  std::uint64_t cycles_fixed = 0;
  std::uint64_t cycles_data = 0;
  int clamps = 0;
};

struct FixedPass2d {
  FixedBlock block;
  std::uint64_t cycles_fixed = 0;
  std::uint64_t cycles_data = 0;
  int clamps = 0;
};

FixedPass1d dct1d_sc(const FixedVector& a, AccuracySelect sel);
FixedPass1d idct1d_sc(const FixedVector& f, AccuracySelect sel);
FixedPass2d dct2d(const FixedBlock& block, AccuracySelect sel);
FixedPass2d idct2d(const FixedBlock& freq, AccuracySelect sel);

FixedBlock apply_mask(const FixedBlock& freq, const FrequencyMask& mask);
RealBlock apply_mask(const RealBlock& freq, const FrequencyMask& mask);

struct PipelineOptions {
  int data_width = kDefaultDataWidth;
  /// Divides the summed cycle count (hardware parallelism).
  int parallelism = kDefaultParallelism;
  /// Host worker threads; output is identical for any value.
  unsigned threads = 1;
};

struct PipelineReport {
  GrayImage output;
  GrayImage reference;
  std::uint64_t total_cycles_fixed = 0;
  std::uint64_t total_cycles_data = 0;
  std::uint64_t clamp_count = 0;
  double psnr_vs_input = 0.0;
  double psnr_vs_reference = 0.0;
};

/// Pixel p -> p / 256 at the given width, sign +.
SignMagnitude normalize_pixel(std::uint8_t p, int width);
/// Round to nearest, clamp to [0, 255].
std::uint8_t denormalize_pixel(const SignMagnitude& v);
std::uint8_t denormalize_pixel(double v);

/// Forward transform, mask, inverse transform through the ARSC MAC.
PipelineReport process_image(const GrayImage& img, AccuracySelect sel,
                             const FrequencyMask& mask,
                             const PipelineOptions& options = {});

/// Same pipeline in double precision, including the inter-stage scaling.
GrayImage reference_pipeline(const GrayImage& img, const FrequencyMask& mask);

}  // namespace arsc

#endif  // ARSC_DCT_PIPELINE_HPP
