#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace c2f {

/// Fixed-width packed bit string, up to 128 bits. Bit i lives in word i/64
/// at position i%64; byte serialization is little-endian within each word.
class BinarySignature {
 public:
  static constexpr int kMaxBits = 128;

  BinarySignature() = default;
  explicit BinarySignature(int width);

  int width() const { return width_; }
  int byte_size() const { return (width_ + 7) / 8; }

  bool bit(int i) const {
    return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1ULL;
  }
  void set_bit(int i, bool value) {
    const uint64_t mask = 1ULL << (i & 63);
    if (value)
      words_[static_cast<size_t>(i) >> 6] |= mask;
    else
      words_[static_cast<size_t>(i) >> 6] &= ~mask;
  }
  void flip_bit(int i) { words_[static_cast<size_t>(i) >> 6] ^= 1ULL << (i & 63); }

  void to_bytes(uint8_t* out) const;
  static BinarySignature from_bytes(const uint8_t* bytes, int width);

  /// Bitwise complement within the signature width.
  BinarySignature complement() const;

  bool operator==(const BinarySignature& other) const = default;

  friend int hamming_distance(const BinarySignature& a,
                              const BinarySignature& b);

 private:
  int width_ = 0;
  std::array<uint64_t, 2> words_{0, 0};
};

/// Popcount of the XOR. Throws when the widths differ.
int hamming_distance(const BinarySignature& a, const BinarySignature& b);

}  // namespace c2f
