#include "c2f/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "c2f/error.hpp"
#include "c2f/rng.hpp"

namespace c2f {

namespace {

// Seed streams for the two trained stores.
constexpr uint64_t kCodebookStream = 1;
constexpr uint64_t kEmbeddingStream = 2;

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

RetrievalStores build_stores(const std::vector<PixelImage>& images,
                             const DescriptorSet& raw_descriptors,
                             const PipelineConfig& cfg) {
  RetrievalStores stores;
  stores.histograms.reserve(images.size());
  for (const auto& img : images)
    stores.histograms.push_back(
        normalize_histogram(hsv_histogram(img, cfg.hsv_dims), cfg.alpha));

  const DescriptorSet prepped = root_preprocess(raw_descriptors);
  stores.codebook = train_kmeans(
      prepped, {cfg.vocab_size, cfg.kmeans_iterations,
                mix_seed(cfg.seed, kCodebookStream)});
  stores.he = train_he(stores.codebook, prepped, cfg.signature_bits,
                       mix_seed(cfg.seed, kEmbeddingStream));

  const auto features =
      quantize_descriptors(raw_descriptors, stores.codebook, stores.he, 1);
  stores.index = build_index(
      features, static_cast<uint32_t>(images.size()),
      {stores.codebook.size(), cfg.signature_bits, cfg.hamming_threshold,
       cfg.sigma, cfg.normalize_scores});
  return stores;
}

SyntheticFixture build_synthetic(const SynthSpec& spec,
                                 const PipelineConfig& cfg) {
  SyntheticFixture fx;
  fx.corpus = generate(spec);
  fx.stores = build_stores(fx.corpus.images, fx.corpus.descriptors, cfg);
  return fx;
}

QueryInput query_from_corpus(const RetrievalStores& stores,
                             const DescriptorSet& raw_descriptors,
                             uint32_t image_id) {
  if (image_id >= stores.image_count())
    throw ConfigError("unknown query image id " + std::to_string(image_id));
  QueryInput q;
  q.query_id = image_id;
  q.histogram = stores.histograms[image_id];
  q.descriptors = raw_descriptors.subset_for_image(image_id);
  return q;
}

BatchResult run_batch(const RetrievalStores& stores,
                      const DescriptorSet& raw_descriptors,
                      const std::vector<uint32_t>& query_ids,
                      const PipelineConfig& cfg) {
  BatchResult out;
  if (query_ids.empty()) return out;
  uint64_t comparisons = 0;
  uint64_t candidate_bytes = 0;
  double elapsed_ms = 0.0;
  const uint64_t entry_bytes =
      4 + static_cast<uint64_t>((stores.index.config.signature_bits + 7) / 8);

  // Per-image posting counts, shared by every query's candidate-memory sum.
  std::vector<uint64_t> image_entries(stores.index.n_images, 0);
  for (const auto& list : stores.index.postings)
    for (const Posting& p : list) ++image_entries[p.image_id];

  for (uint32_t id : query_ids) {
    const QueryInput q = query_from_corpus(stores, raw_descriptors, id);
    const auto start = std::chrono::steady_clock::now();
    RankList list = run_query(q, stores, cfg);
    const auto stop = std::chrono::steady_clock::now();
    elapsed_ms +=
        std::chrono::duration<double, std::milli>(stop - start).count();
    comparisons += list.comparison_count;
    for (const auto& e : list.entries)
      candidate_bytes += image_entries[e.image_id] * entry_bytes;
    out.rankings[id] = list.full_ranking();
  }
  const double n = static_cast<double>(query_ids.size());
  out.mean_comparisons = static_cast<double>(comparisons) / n;
  out.mean_query_ms = elapsed_ms / n;
  out.mean_candidate_bytes =
      static_cast<uint64_t>(static_cast<double>(candidate_bytes) / n);
  return out;
}

RankingsById holistic_rankings(const RetrievalStores& stores,
                               const std::vector<uint32_t>& query_ids) {
  RankingsById out;
  for (uint32_t id : query_ids) {
    if (id >= stores.image_count())
      throw ConfigError("unknown query image id " + std::to_string(id));
    const auto ranking =
        rank_database(stores.histograms[id], stores.histograms);
    std::vector<uint32_t> ids(ranking.size());
    for (size_t i = 0; i < ranking.size(); ++i) ids[i] = ranking[i].image_id;
    out[id] = std::move(ids);
  }
  return out;
}

std::vector<uint32_t> query_ids_of(const GroundTruth& gt) {
  std::vector<uint32_t> ids;
  ids.reserve(gt.positives.size());
  for (const auto& [query, _] : gt.positives) ids.push_back(query);
  return ids;
}

namespace {

bool all_groups_of_four(const GroundTruth& gt) {
  for (const auto& [_, positives] : gt.positives)
    if (positives.size() != 4) return false;
  return !gt.positives.empty();
}

SweepRow measure_row(const RetrievalStores& stores,
                     const DescriptorSet& raw_descriptors,
                     const GroundTruth& gt, int k, bool weights,
                     const PipelineConfig& base_cfg, int distractors) {
  SweepRow row;
  row.distractors = distractors;
  row.k = k;
  row.weights = weights;
  const auto query_ids = query_ids_of(gt);
  const bool want_ns =
      gt.protocol == Protocol::ukbench_like && all_groups_of_four(gt);

  if (k == 0) {
    const auto rankings = holistic_rankings(stores, query_ids);
    row.map_value = mean_ap(rankings, gt);
    if (want_ns) row.ns_value = ns_score(rankings, gt);
    return row;
  }

  PipelineConfig cfg = base_cfg;
  cfg.candidates = k;
  cfg.weights_enabled = weights;
  const BatchResult batch = run_batch(stores, raw_descriptors, query_ids, cfg);
  row.map_value = mean_ap(batch.rankings, gt);
  if (want_ns) row.ns_value = ns_score(batch.rankings, gt);
  row.mean_comparisons = batch.mean_comparisons;
  row.candidate_bytes = batch.mean_candidate_bytes;
  row.mean_query_ms = batch.mean_query_ms;
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_stores(const RetrievalStores& stores,
                                   const DescriptorSet& raw_descriptors,
                                   const GroundTruth& gt,
                                   const std::vector<int>& k_values,
                                   WeightSetting weights,
                                   const PipelineConfig& cfg) {
  std::vector<SweepRow> rows;
  for (int k : k_values) {
    if (k < 0) throw ConfigError("sweep K values must be >= 0");
    if (k == 0) {
      rows.push_back(
          measure_row(stores, raw_descriptors, gt, 0, false, cfg, 0));
      continue;
    }
    if (weights == WeightSetting::off || weights == WeightSetting::both)
      rows.push_back(
          measure_row(stores, raw_descriptors, gt, k, false, cfg, 0));
    if (weights == WeightSetting::on || weights == WeightSetting::both)
      rows.push_back(
          measure_row(stores, raw_descriptors, gt, k, true, cfg, 0));
  }
  return rows;
}

std::vector<SweepRow> sweep_synthetic(const SynthSpec& base,
                                      const std::vector<int>& distractor_counts,
                                      const std::vector<int>& k_values,
                                      WeightSetting weights,
                                      const PipelineConfig& cfg) {
  std::vector<SweepRow> rows;
  for (int distractors : distractor_counts) {
    SynthSpec spec = base;
    spec.n_distractors = distractors;
    const SyntheticFixture fx = build_synthetic(spec, cfg);
    auto batch_rows = sweep_stores(fx.stores, fx.corpus.descriptors,
                                   fx.corpus.ground_truth, k_values, weights,
                                   cfg);
    for (auto& row : batch_rows) row.distractors = distractors;
    rows.insert(rows.end(), batch_rows.begin(), batch_rows.end());
  }
  return rows;
}

std::string format_sweep_table(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "distractors     K weights       mAP       N-S   comparisons "
         "cand_bytes  query_ms\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%11d %5d %7s %9.4f %9s %13.1f %10llu %9.3f\n",
                  r.distractors, r.k, r.k == 0 ? "-" : (r.weights ? "on" : "off"),
                  r.map_value,
                  r.ns_value < 0 ? "-" : fixed(r.ns_value, 4).c_str(),
                  r.mean_comparisons,
                  static_cast<unsigned long long>(r.candidate_bytes),
                  r.mean_query_ms);
    out << line;
  }
  return out.str();
}

std::string sweep_jsonl(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) {
    out << "{\"distractors\":" << r.distractors << ",\"k\":" << r.k
        << ",\"weights\":" << (r.weights ? "true" : "false")
        << ",\"map\":" << fixed(r.map_value, 9);
    if (r.ns_value >= 0) out << ",\"ns\":" << fixed(r.ns_value, 9);
    out << ",\"mean_comparisons\":" << fixed(r.mean_comparisons, 2)
        << ",\"candidate_bytes\":" << r.candidate_bytes
        << ",\"mean_query_ms\":" << fixed(r.mean_query_ms, 4) << "}\n";
  }
  return out.str();
}

std::string format_rank_report(const RankList& list) {
  std::ostringstream out;
  out << "query " << list.query_id << " candidates " << list.entries.size()
      << " comparisons " << list.comparison_count << "\n";
  out << "# rank image fused local weight holistic\n";
  for (size_t i = 0; i < list.entries.size(); ++i) {
    const auto& e = list.entries[i];
    out << (i + 1) << " " << e.image_id << " " << fixed(e.fused, 9) << " "
        << fixed(e.local, 9) << " " << fixed(e.weight, 9) << " "
        << fixed(e.holistic, 9) << "\n";
  }
  return out.str();
}

}  // namespace c2f
