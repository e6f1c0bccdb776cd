#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "c2f/codebook.hpp"
#include "c2f/descriptor.hpp"
#include "c2f/signature.hpp"

namespace c2f {

/// Hamming-embedding parameters: a random orthonormal projection shared by
/// all words, plus per-word median thresholds learned from training data.
struct HeParameters {
  int dim = 0;       // descriptor dimensionality D
  int bits = 0;      // signature width d_b
  uint32_t vocab_size = 0;
  std::vector<float> projection;  // bits x dim, row-major
  std::vector<float> thresholds;  // vocab_size x bits
  uint64_t seed = 0;

  std::span<const float> projection_row(int i) const {
    return {projection.data() + static_cast<size_t>(i) * dim,
            static_cast<size_t>(dim)};
  }
  std::span<const float> word_thresholds(uint32_t word) const {
    return {thresholds.data() + static_cast<size_t>(word) * bits,
            static_cast<size_t>(bits)};
  }
};

/// Learns the projection (first `bits` rows of a seeded random orthonormal
/// matrix) and per-word coordinate medians over the training descriptors,
/// which must already be preprocessed like the codebook's training corpus.
/// Words with no training data fall back to all-zero thresholds.
HeParameters train_he(const Codebook& cb, const DescriptorSet& training,
                      int bits, uint64_t seed);

/// Projects the (preprocessed) descriptor and thresholds it against the
/// word's medians: bit i is set iff projection exceeds the threshold.
BinarySignature sign(std::span<const float> descriptor, uint32_t word,
                     const HeParameters& he);

/// One quantized local feature: visual word plus binary signature.
struct QuantizedFeature {
  uint32_t word = 0;
  BinarySignature signature;
  uint32_t image_id = 0;
};

/// True iff both features share the word and their signatures lie within
/// the Hamming threshold.
bool matches(const QuantizedFeature& x, const QuantizedFeature& y,
             int hamming_threshold);

/// Preprocesses, quantizes and signs a whole descriptor set. Database
/// features use multiplicity = 1; query features may fan out to the m
/// nearest words, each signed against its own word's thresholds.
std::vector<QuantizedFeature> quantize_descriptors(const DescriptorSet& raw,
                                                   const Codebook& cb,
                                                   const HeParameters& he,
                                                   int multiplicity = 1);

}  // namespace c2f
