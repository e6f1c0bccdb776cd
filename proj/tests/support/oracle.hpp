#pragma once

// Brute-force reference implementations used only by tests. Each one takes
// the naive route (full double loops, explicit curve construction) so the
// production paths can be checked against an independent computation.

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "c2f/embedding.hpp"
#include "c2f/fusion.hpp"
#include "c2f/rng.hpp"

namespace c2f::oracle {

/// idf recomputed from the raw feature list.
std::vector<double> naive_idf(const std::vector<QuantizedFeature>& db,
                              uint32_t n_images, uint32_t vocab_size);

/// Local scores by a full query-feature x database-feature double loop.
std::unordered_map<uint32_t, double> naive_local_scores(
    const std::vector<QuantizedFeature>& query,
    const std::vector<QuantizedFeature>& db, uint32_t n_images,
    uint32_t vocab_size, int hamming_threshold, double sigma, bool normalize,
    const std::vector<uint32_t>& candidates);

/// Average precision via explicit precision-recall curve integration.
double naive_average_precision(const std::vector<uint32_t>& ranking,
                               const std::unordered_set<uint32_t>& positives);

/// Nearest / m-nearest centroids by exhaustive scan with full sort.
uint32_t naive_quantize(std::span<const float> descriptor, const Codebook& cb);
std::vector<uint32_t> naive_multi_assign(std::span<const float> descriptor,
                                         const Codebook& cb, int m);

/// Signature by direct projection and threshold comparison.
BinarySignature naive_sign(std::span<const float> descriptor, uint32_t word,
                           const HeParameters& he);

/// Full brute-force pipeline: direct cosine ranking, min-max weights,
/// naive local scoring, multiplicative fusion. Mirrors the production sort
/// rules (fused desc, holistic desc, id asc).
struct PipelineResult {
  std::vector<RankEntry> entries;
  std::vector<uint32_t> tail;

  std::vector<uint32_t> full_ranking() const;
};

PipelineResult naive_pipeline(const HsvHistogram& query_hist,
                              const DescriptorSet& query_raw,
                              const RetrievalStores& stores,
                              const DescriptorSet& db_raw,
                              const PipelineConfig& cfg);

/// BOW-only reference: naive local scores over the whole database, sorted
/// by local score with holistic/id tie-breaks.
std::vector<uint32_t> naive_bow_ranking(const HsvHistogram& query_hist,
                                        const DescriptorSet& query_raw,
                                        const RetrievalStores& stores,
                                        const DescriptorSet& db_raw,
                                        const PipelineConfig& cfg);

BinarySignature random_signature(Rng& rng, int width);

}  // namespace c2f::oracle
