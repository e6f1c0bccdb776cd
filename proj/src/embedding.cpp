#include "c2f/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "c2f/error.hpp"
#include "c2f/rng.hpp"

namespace c2f {

namespace {

// Seeded Gaussian rows orthonormalized by modified Gram-Schmidt with one
// re-orthogonalization pass. Equivalent to the leading rows of the Q factor
// of a seeded random matrix.
std::vector<float> random_orthonormal_rows(int rows, int dim, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> basis;
  basis.reserve(rows);
  while (static_cast<int>(basis.size()) < rows) {
    std::vector<double> v(dim);
    for (double& x : v) x = rng.gaussian();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) dot += v[i] * b[i];
        for (int i = 0; i < dim; ++i) v[i] -= dot * b[i];
      }
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;  // degenerate draw, take a fresh one
    for (double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }

  std::vector<float> out(static_cast<size_t>(rows) * dim);
  for (int r = 0; r < rows; ++r)
    for (int i = 0; i < dim; ++i)
      out[static_cast<size_t>(r) * dim + i] = static_cast<float>(basis[r][i]);
  return out;
}

std::vector<double> project(std::span<const float> descriptor,
                            const HeParameters& he) {
  std::vector<double> out(he.bits);
  for (int r = 0; r < he.bits; ++r) {
    const auto row = he.projection_row(r);
    double acc = 0.0;
    for (int i = 0; i < he.dim; ++i)
      acc += static_cast<double>(row[i]) * static_cast<double>(descriptor[i]);
    out[r] = acc;
  }
  return out;
}

double median(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

HeParameters train_he(const Codebook& cb, const DescriptorSet& training,
                      int bits, uint64_t seed) {
  if (bits < 1) throw ConfigError("signature width must be >= 1");
  if (bits > cb.dim)
    throw ConfigError("signature width " + std::to_string(bits) +
                      " exceeds descriptor dimensionality " +
                      std::to_string(cb.dim));
  if (bits > BinarySignature::kMaxBits)
    throw ConfigError("signature width exceeds the supported maximum of " +
                      std::to_string(BinarySignature::kMaxBits));

  HeParameters he;
  he.dim = cb.dim;
  he.bits = bits;
  he.vocab_size = cb.size();
  he.seed = seed;
  he.projection = random_orthonormal_rows(bits, cb.dim, seed);

  // Per-word, per-coordinate projected values of the training descriptors.
  std::vector<std::vector<std::vector<double>>> samples(
      he.vocab_size, std::vector<std::vector<double>>(bits));
  for (size_t i = 0; i < training.size(); ++i) {
    const auto row = training.row(i);
    const uint32_t word = quantize(row, cb);
    const auto projected = project(row, he);
    for (int b = 0; b < bits; ++b) samples[word][b].push_back(projected[b]);
  }

  he.thresholds.assign(static_cast<size_t>(he.vocab_size) * bits, 0.0f);
  for (uint32_t w = 0; w < he.vocab_size; ++w) {
    for (int b = 0; b < bits; ++b) {
      auto& vals = samples[w][b];
      if (vals.empty()) continue;  // fallback threshold 0
      he.thresholds[static_cast<size_t>(w) * bits + b] =
          static_cast<float>(median(vals));
    }
  }
  return he;
}

BinarySignature sign(std::span<const float> descriptor, uint32_t word,
                     const HeParameters& he) {
  if (static_cast<int>(descriptor.size()) != he.dim)
    throw ConfigError("descriptor dimension does not match the projection");
  if (word >= he.vocab_size)
    throw ConfigError("word id out of range for the trained thresholds");
  const auto projected = project(descriptor, he);
  const auto thresholds = he.word_thresholds(word);
  BinarySignature sig(he.bits);
  for (int b = 0; b < he.bits; ++b)
    if (projected[b] > static_cast<double>(thresholds[b])) sig.set_bit(b, true);
  return sig;
}

bool matches(const QuantizedFeature& x, const QuantizedFeature& y,
             int hamming_threshold) {
  return x.word == y.word &&
         hamming_distance(x.signature, y.signature) <= hamming_threshold;
}

std::vector<QuantizedFeature> quantize_descriptors(const DescriptorSet& raw,
                                                   const Codebook& cb,
                                                   const HeParameters& he,
                                                   int multiplicity) {
  if (cb.size() != he.vocab_size || cb.dim != he.dim)
    throw ConfigError("codebook and embedding parameters disagree");
  std::vector<QuantizedFeature> out;
  out.reserve(raw.size() * static_cast<size_t>(std::max(multiplicity, 1)));
  for (size_t i = 0; i < raw.size(); ++i) {
    const auto processed = root_preprocess(raw.row(i));
    for (uint32_t word : multi_assign(processed, cb, multiplicity))
      out.push_back({word, sign(processed, word, he), raw.image_ids[i]});
  }
  return out;
}

}  // namespace c2f
