#include "c2f/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "c2f/error.hpp"

namespace c2f {

namespace {

[[noreturn]] void fail(size_t offset, const std::string& what) {
  throw DecodeError("PPM decode error at byte " + std::to_string(offset) +
                    ": " + what);
}

struct Cursor {
  std::span<const uint8_t> bytes;
  size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  uint8_t peek() const { return bytes[pos]; }

  // Skips whitespace and '#' comment lines between header tokens.
  void skip_separators() {
    while (!eof()) {
      uint8_t c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else if (std::isspace(c)) {
        ++pos;
      } else {
        break;
      }
    }
  }

  int read_int(const char* field) {
    skip_separators();
    if (eof()) fail(pos, std::string("missing ") + field);
    if (!std::isdigit(peek()))
      fail(pos, std::string("expected digit in ") + field);
    long value = 0;
    while (!eof() && std::isdigit(peek())) {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000'000) fail(pos, std::string(field) + " overflows");
      ++pos;
    }
    return static_cast<int>(value);
  }
};

}  // namespace

PixelImage decode_ppm(std::span<const uint8_t> bytes) {
  Cursor cur{bytes};
  if (bytes.size() < 2) fail(0, "file too short for magic");
  if (bytes[0] != 'P' || bytes[1] != '6') {
    if (bytes[0] == 'P' && bytes[1] == '3')
      fail(0, "ASCII PPM (P3) unsupported, need binary P6");
    fail(0, "bad magic, expected P6");
  }
  cur.pos = 2;

  PixelImage img;
  img.width = cur.read_int("width");
  img.height = cur.read_int("height");
  if (img.width < 1 || img.height < 1)
    fail(cur.pos, "width and height must be >= 1");
  const size_t maxval_at = cur.pos;
  const int maxval = cur.read_int("maxval");
  if (maxval != 255)
    fail(maxval_at, "maxval " + std::to_string(maxval) + " unsupported, need 255");

  if (cur.eof()) fail(cur.pos, "missing separator after maxval");
  if (!std::isspace(cur.peek()))
    fail(cur.pos, "expected single whitespace after maxval");
  ++cur.pos;  // exactly one whitespace byte, then raw pixel data

  const size_t need = img.pixel_count() * 3;
  const size_t have = bytes.size() - cur.pos;
  if (have < need)
    fail(bytes.size(), "truncated pixel data, need " + std::to_string(need) +
                           " bytes, have " + std::to_string(have));
  img.pixels.assign(bytes.begin() + cur.pos, bytes.begin() + cur.pos + need);
  return img;
}

std::vector<uint8_t> encode_ppm(const PixelImage& img) {
  std::string header = "P6\n" + std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

PixelImage load_ppm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError("cannot open image file: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return decode_ppm(bytes);
}

void save_ppm_file(const std::string& path, const PixelImage& img) {
  const auto bytes = encode_ppm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write image file: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

void rgb_to_hsv(uint8_t r, uint8_t g, uint8_t b, double& h, double& s,
                double& v) {
  const double rd = r / 255.0;
  const double gd = g / 255.0;
  const double bd = b / 255.0;
  const double hi = std::max({rd, gd, bd});
  const double lo = std::min({rd, gd, bd});
  const double diff = hi - lo;

  v = hi;
  s = hi == 0.0 ? 0.0 : diff / hi;

  if (diff == 0.0) {
    h = 0.0;
    return;
  }
  if (hi == rd) {
    h = 60.0 * std::fmod((gd - bd) / diff + 6.0, 6.0);
  } else if (hi == gd) {
    h = 60.0 * ((bd - rd) / diff + 2.0);
  } else {
    h = 60.0 * ((rd - gd) / diff + 4.0);
  }
  if (h >= 360.0) h = 0.0;
}

void hsv_to_rgb(double h, double s, double v, uint8_t& r, uint8_t& g,
                uint8_t& b) {
  h = std::fmod(h, 360.0);
  if (h < 0) h += 360.0;
  const double c = v * s;
  const double x = c * (1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0));
  const double m = v - c;
  double rd = 0, gd = 0, bd = 0;
  switch (static_cast<int>(h / 60.0)) {
    case 0: rd = c; gd = x; break;
    case 1: rd = x; gd = c; break;
    case 2: gd = c; bd = x; break;
    case 3: gd = x; bd = c; break;
    case 4: rd = x; bd = c; break;
    default: rd = c; bd = x; break;
  }
  auto to_byte = [m](double t) {
    return static_cast<uint8_t>(
        std::clamp(std::lround((t + m) * 255.0), 0L, 255L));
  };
  r = to_byte(rd);
  g = to_byte(gd);
  b = to_byte(bd);
}

}  // namespace c2f
