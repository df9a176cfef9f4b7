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

#include "arsc/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace arsc {
namespace {

// Minimal P5 header scanner that keeps track of the byte offset.
class PgmReader {
 public:
  explicit PgmReader(std::istream& in) : in_(in) {}

  int get() {
    const int c = in_.get();
    if (c != std::char_traits<char>::eof()) ++offset_;
    return c;
  }
  int peek() { return in_.peek(); }
  std::size_t offset() const noexcept { return offset_; }

  void skip_space_and_comments() {
    for (;;) {
      const int c = peek();
      if (c == '#') {
        while (get() != '\n') {
          if (peek() == std::char_traits<char>::eof()) return;
        }
      } else if (c != std::char_traits<char>::eof() && std::isspace(c)) {
        get();
      } else {
        return;
      }
    }
  }

  long read_uint(const char* field) {
    skip_space_and_comments();
    const int first = peek();
    if (first == std::char_traits<char>::eof()) {
      throw PgmError(std::string("PGM header truncated before ") + field, offset_);
    }
    if (!std::isdigit(first)) {
      throw PgmError(std::string("PGM header: expected digits for ") + field, offset_);
    }
    long v = 0;
    while (std::isdigit(peek())) {
      v = v * 10 + (get() - '0');
      if (v > 1'000'000) throw PgmError(std::string("PGM header: ") + field + " too large", offset_);
    }
    return v;
  }

 private:
  std::istream& in_;
  std::size_t offset_ = 0;
};

}  // namespace

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w),
      height(h),
      pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
  if (w < 0 || h < 0) throw std::invalid_argument("GrayImage: negative dimensions");
}

PgmError::PgmError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
      offset_(offset) {}

GrayImage read_pgm(std::istream& in) {
  PgmReader r(in);
  const int m0 = r.get();
  const int m1 = r.get();
  if (m0 == std::char_traits<char>::eof() || m1 == std::char_traits<char>::eof()) {
    throw PgmError("PGM header truncated in magic number", r.offset());
  }
  if (m0 != 'P' || m1 != '5') {
    throw PgmError("not a binary PGM (expected magic P5)", 0);
  }
  const long width = r.read_uint("width");
  const long height = r.read_uint("height");
  const long maxval = r.read_uint("maxval");
  if (width <= 0 || height <= 0) throw PgmError("PGM header: zero dimension", r.offset());
  if (maxval != 255) {
    throw PgmError("unsupported PGM maxval " + std::to_string(maxval) + " (only 255)",
                   r.offset());
  }
  const int sep = r.get();
  if (sep == std::char_traits<char>::eof()) {
    throw PgmError("PGM header truncated after maxval", r.offset());
  }
  if (!std::isspace(sep)) throw PgmError("PGM header: missing separator", r.offset() - 1);

  GrayImage img(static_cast<int>(width), static_cast<int>(height));
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got != img.pixels.size()) {
    throw PgmError("PGM pixel data truncated: expected " +
                       std::to_string(img.pixels.size()) + " bytes, got " +
                       std::to_string(got),
                   r.offset() + got);
  }
  return img;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_pgm(out, img);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

double psnr(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument("psnr: dimension mismatch");
  }
  if (a.empty()) throw std::invalid_argument("psnr: empty images");
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const int d = int{a.pixels[i]} - int{b.pixels[i]};
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return kPsnrIdentical;
  const double mse = static_cast<double>(sse) / static_cast<double>(a.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

GrayImage pad_edge(const GrayImage& img, int multiple) {
  if (img.empty()) throw std::invalid_argument("pad_edge: empty image");
  const int w = (img.width + multiple - 1) / multiple * multiple;
  const int h = (img.height + multiple - 1) / multiple * multiple;
  if (w == img.width && h == img.height) return img;
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = img.at(std::min(x, img.width - 1), std::min(y, img.height - 1));
    }
  }
  return out;
}

GrayImage crop(const GrayImage& img, int width, int height) {
  if (width > img.width || height > img.height) {
    throw std::invalid_argument("crop: target larger than source");
  }
  GrayImage out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out.at(x, y) = img.at(x, y);
  }
  return out;
}

GrayImage make_reference_image(int size) {
  if (size <= 0) throw std::invalid_argument("make_reference_image: size must be positive");
  GrayImage img(size, size);
  const double s = static_cast<double>(size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double fx = x / s;
      const double fy = y / s;
      double v = 40.0 + 120.0 * fx + 50.0 * fy;

      const double dx = fx - 0.62;
      const double dy = fy - 0.38;
      const double r2 = (dx * dx + dy * dy) / (0.22 * 0.22);
      if (r2 < 1.0) v += 60.0 * (1.0 - r2);

      // hard-edged bars in the lower left quadrant
      if (fy > 0.6 && fx < 0.45 && ((x / 12) % 2 == 0)) v -= 35.0;

      // integer hash texture, amplitude +-6
      std::uint32_t h = static_cast<std::uint32_t>(x) * 73856093u ^
                        static_cast<std::uint32_t>(y) * 19349663u;
      h ^= h >> 13;
      h *= 0x5bd1e995u;
      h ^= h >> 15;
      v += static_cast<double>(h % 13) - 6.0;

      img.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return img;
}

}  // namespace arsc
