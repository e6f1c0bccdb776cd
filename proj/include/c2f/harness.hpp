#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "c2f/fusion.hpp"
#include "c2f/synthgen.hpp"

namespace c2f {

/// Trains codebook and embedding, extracts histograms and builds the index
/// from one raw corpus. Deterministic given the corpus and config.
RetrievalStores build_stores(const std::vector<PixelImage>& images,
                             const DescriptorSet& raw_descriptors,
                             const PipelineConfig& cfg);

struct SyntheticFixture {
  SynthCorpus corpus;
  RetrievalStores stores;
};

SyntheticFixture build_synthetic(const SynthSpec& spec,
                                 const PipelineConfig& cfg);

/// Query assembled from corpus stores: the image's own histogram and raw
/// descriptors.
QueryInput query_from_corpus(const RetrievalStores& stores,
                             const DescriptorSet& raw_descriptors,
                             uint32_t image_id);

struct BatchResult {
  RankingsById rankings;  // full-depth, one per query
  double mean_comparisons = 0.0;
  double mean_query_ms = 0.0;
  uint64_t mean_candidate_bytes = 0;  // postings of the K candidates
};

/// Runs the pipeline for each query id and gathers full-depth rankings plus
/// per-query cost counters.
BatchResult run_batch(const RetrievalStores& stores,
                      const DescriptorSet& raw_descriptors,
                      const std::vector<uint32_t>& query_ids,
                      const PipelineConfig& cfg);

/// Holistic-only full rankings (the coarse layer by itself).
RankingsById holistic_rankings(const RetrievalStores& stores,
                               const std::vector<uint32_t>& query_ids);

struct SweepRow {
  int distractors = 0;
  int k = 0;            // 0 means holistic-only
  bool weights = false;
  double map_value = 0.0;
  double ns_value = -1.0;  // negative when not applicable
  double mean_comparisons = 0.0;
  uint64_t candidate_bytes = 0;
  double mean_query_ms = 0.0;
};

enum class WeightSetting { off, on, both };

/// One row per (K, weights) combination over already-built stores.
/// K = 0 produces the holistic-only row.
std::vector<SweepRow> sweep_stores(const RetrievalStores& stores,
                                   const DescriptorSet& raw_descriptors,
                                   const GroundTruth& gt,
                                   const std::vector<int>& k_values,
                                   WeightSetting weights,
                                   const PipelineConfig& cfg);

/// Rebuilds the synthetic corpus per distractor count and sweeps each one.
std::vector<SweepRow> sweep_synthetic(const SynthSpec& base,
                                      const std::vector<int>& distractor_counts,
                                      const std::vector<int>& k_values,
                                      WeightSetting weights,
                                      const PipelineConfig& cfg);

std::string format_sweep_table(const std::vector<SweepRow>& rows);
std::string sweep_jsonl(const std::vector<SweepRow>& rows);

/// Query-result report: header line with query id and comparison count,
/// then one line per entry: rank, image id, fused, local, weight, holistic.
std::string format_rank_report(const RankList& list);

std::vector<uint32_t> query_ids_of(const GroundTruth& gt);

}  // namespace c2f
