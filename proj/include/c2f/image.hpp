#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace c2f {

/// Decoded raster image: row-major RGB triples, one byte per channel.
struct PixelImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // width * height * 3 bytes

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

/// Parses a binary (P6) PPM with maxval 255. ASCII PPMs and other maxvals
/// are rejected. Throws DecodeError naming the byte offset of the problem.
PixelImage decode_ppm(std::span<const uint8_t> bytes);

/// Serializes to binary P6 with maxval 255.
std::vector<uint8_t> encode_ppm(const PixelImage& img);

PixelImage load_ppm_file(const std::string& path);
void save_ppm_file(const std::string& path, const PixelImage& img);

/// Hexagonal-cone RGB -> HSV. H in [0, 360), S and V in [0, 1].
/// Achromatic pixels (max == min) get H = 0, S = 0.
void rgb_to_hsv(uint8_t r, uint8_t g, uint8_t b, double& h, double& s,
                double& v);

/// Inverse conversion, used by the synthetic corpus generator.
void hsv_to_rgb(double h, double s, double v, uint8_t& r, uint8_t& g,
                uint8_t& b);

}  // namespace c2f
