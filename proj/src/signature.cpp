#include "c2f/signature.hpp"

#include <string>

#include "c2f/error.hpp"

namespace c2f {

BinarySignature::BinarySignature(int width) : width_(width) {
  if (width < 1 || width > kMaxBits)
    throw ConfigError("signature width must be in [1, " +
                      std::to_string(kMaxBits) + "], got " +
                      std::to_string(width));
}

void BinarySignature::to_bytes(uint8_t* out) const {
  for (int b = 0; b < byte_size(); ++b)
    out[b] = static_cast<uint8_t>(words_[static_cast<size_t>(b) >> 3] >>
                                  ((b & 7) * 8));
}

BinarySignature BinarySignature::from_bytes(const uint8_t* bytes, int width) {
  BinarySignature sig(width);
  for (int b = 0; b < sig.byte_size(); ++b)
    sig.words_[static_cast<size_t>(b) >> 3] |=
        static_cast<uint64_t>(bytes[b]) << ((b & 7) * 8);
  // Mask stray bits beyond the width so equality stays well-defined.
  if (width & 63) {
    const uint64_t mask = (1ULL << (width & 63)) - 1;
    sig.words_[static_cast<size_t>(width) >> 6] &= mask;
  }
  return sig;
}

BinarySignature BinarySignature::complement() const {
  BinarySignature out(width_);
  for (int i = 0; i < width_; ++i) out.set_bit(i, !bit(i));
  return out;
}

int hamming_distance(const BinarySignature& a, const BinarySignature& b) {
  if (a.width_ != b.width_)
    throw ConfigError("signature width mismatch: " +
                      std::to_string(a.width_) + " vs " +
                      std::to_string(b.width_));
  return std::popcount(a.words_[0] ^ b.words_[0]) +
         std::popcount(a.words_[1] ^ b.words_[1]);
}

}  // namespace c2f
