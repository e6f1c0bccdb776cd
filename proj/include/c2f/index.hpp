#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "c2f/embedding.hpp"

namespace c2f {

struct IndexConfig {
  uint32_t vocab_size = 0;     // k
  int signature_bits = 128;    // d_b
  int hamming_threshold = 52;  // h_t
  double sigma = 26.0;         // Gaussian weighting bandwidth
  bool normalize = true;       // divide scores by the image's idf norm

  bool operator==(const IndexConfig&) const = default;
};

struct Posting {
  uint32_t image_id = 0;
  BinarySignature signature;
};

/// Inverted file over quantized database features: per-word posting lists
/// (sorted by image id), idf statistics and per-image idf norms.
struct InvertedIndex {
  IndexConfig config;
  uint32_t n_images = 0;
  std::vector<std::vector<Posting>> postings;  // one list per word
  std::vector<double> idf;                     // ln(N / n_w), 0 when unused
  std::vector<double> image_norms;             // > 0 for every image
  std::vector<uint32_t> featureless_images;    // indexed with norm 1

  uint64_t posting_count() const;
};

/// Builds the index. Features must come from one codebook / embedding pair;
/// image ids must be < n_images. Images with no features are indexed with
/// norm 1 and recorded in featureless_images.
InvertedIndex build_index(const std::vector<QuantizedFeature>& features,
                          uint32_t n_images, const IndexConfig& config);

/// Per-candidate local similarity, plus the number of candidate posting
/// entries that were actually evaluated.
struct LocalScores {
  std::unordered_map<uint32_t, double> scores;  // absent id means 0
  uint64_t postings_touched = 0;
};

struct ScoringParams {
  int hamming_threshold = 52;
  double sigma = 26.0;
  bool normalize = true;
};

/// Scores the query features against candidate images only: every matching
/// feature pair contributes idf(word)^2 * exp(-h^2/sigma^2); the sum is
/// divided by the database image's idf norm when normalization is on.
/// Images outside the candidate set are never scored.
LocalScores score_candidates(const std::vector<QuantizedFeature>& query,
                             const InvertedIndex& idx,
                             std::span<const uint32_t> candidates,
                             const ScoringParams& params);

/// Convenience overload using the parameters the index was built with.
LocalScores score_candidates(const std::vector<QuantizedFeature>& query,
                             const InvertedIndex& idx,
                             std::span<const uint32_t> candidates);

/// Exact byte totals of the declared on-disk layout, per component.
struct MemoryReport {
  uint64_t posting_bytes = 0;  // entries * (4 + d_b/8)
  uint64_t idf_bytes = 0;      // k * 4
  uint64_t norm_bytes = 0;     // n_images * 4

  uint64_t total() const { return posting_bytes + idf_bytes + norm_bytes; }
};

MemoryReport memory_report(const InvertedIndex& idx);

/// Bytes the postings of one image occupy, used by the sweep harness to
/// report per-query candidate memory.
uint64_t image_posting_bytes(const InvertedIndex& idx, uint32_t image_id);

}  // namespace c2f
