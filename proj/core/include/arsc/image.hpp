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

#ifndef ARSC_IMAGE_HPP
#define ARSC_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace arsc {

/// 8-bit grayscale image, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0);

  bool empty() const noexcept { return pixels.empty(); }
  std::uint8_t& at(int x, int y) { return pixels[index(x, y)]; }
  std::uint8_t at(int x, int y) const { return pixels[index(x, y)]; }

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
};

/// Malformed or unsupported PGM input. offset is the byte position in the
/// stream where parsing stopped.
class PgmError : public std::runtime_error {
 public:
  PgmError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Binary PGM (P5), maxval 255 only.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const GrayImage& img);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

/// PSNR sentinel for identical images.
inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

/// 10*log10(255^2 / MSE) in dB; kPsnrIdentical when MSE is zero.
double psnr(const GrayImage& a, const GrayImage& b);

/// Replicates the last row/column until both dimensions are multiples of
/// `multiple`.
GrayImage pad_edge(const GrayImage& img, int multiple);
GrayImage crop(const GrayImage& img, int width, int height);

/// Deterministic synthetic test picture: smooth gradient, a soft disc, a few
/// sharp edges and low-amplitude hashed texture.
GrayImage make_reference_image(int size = 256);

}  // namespace arsc

#endif  // ARSC_IMAGE_HPP
