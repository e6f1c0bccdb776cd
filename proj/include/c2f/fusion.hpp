#pragma once

#include <cstdint>
#include <vector>

#include "c2f/histogram.hpp"
#include "c2f/index.hpp"
#include "c2f/weighting.hpp"

namespace c2f {

/// Knobs of the two-layer pipeline. Defaults follow the reference setup:
/// 20x10x5 HSV bins, alpha 0.5, 128-bit signatures, Hamming threshold 52,
/// Gaussian bandwidth 26, query-side multiple assignment 3.
struct PipelineConfig {
  int candidates = 1000;  // K
  double alpha = 0.5;
  HistogramDims hsv_dims{20, 10, 5};
  uint32_t vocab_size = 20000;
  int signature_bits = 128;
  int hamming_threshold = 52;
  double sigma = 26.0;
  int multi_assign = 3;
  bool weights_enabled = true;
  bool normalize_scores = true;
  int kmeans_iterations = 25;
  uint64_t seed = 42;
};

struct RankEntry {
  uint32_t image_id = 0;
  double fused = 0.0;     // s^F
  double local = 0.0;     // s^L
  double weight = 0.0;    // w
  double holistic = 0.0;  // s^G
};

/// Final ranking for one query: the K candidates sorted descending by fused
/// score (ties by holistic score, then ascending id), the remaining images
/// in holistic order for full-depth evaluation, and the comparison counter
/// witnessing the candidate-restricted scan.
struct RankList {
  uint32_t query_id = 0;
  std::vector<RankEntry> entries;
  std::vector<uint32_t> tail;  // non-candidates, holistic order
  uint64_t comparison_count = 0;

  /// Candidate ids followed by the tail.
  std::vector<uint32_t> full_ranking() const;
};

/// Read-only stores the pipeline queries against; all built from one corpus.
struct RetrievalStores {
  std::vector<HsvHistogram> histograms;  // normalized, image id = position
  Codebook codebook;
  HeParameters he;
  InvertedIndex index;

  uint32_t image_count() const {
    return static_cast<uint32_t>(histograms.size());
  }
};

struct QueryInput {
  uint32_t query_id = 0;
  HsvHistogram histogram;    // normalized like the database histograms
  DescriptorSet descriptors; // raw; preprocessing happens inside
};

/// Elementwise product of local scores and weights. Candidates missing from
/// the local map score 0; a local id missing from the weights is an error.
std::vector<RankEntry> fuse_scores(const LocalScores& local,
                                   const WeightedCandidateSet& weights);

/// The full two-layer pipeline: holistic filter to K candidates, adaptive
/// (or uniform) weights, candidate-restricted local scoring, multiplicative
/// fusion. comparison_count = N + candidate posting entries evaluated.
RankList run_query(const QueryInput& query, const RetrievalStores& db,
                   const PipelineConfig& cfg);

}  // namespace c2f
