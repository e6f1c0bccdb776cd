#include "c2f/index.hpp"

#include <algorithm>
#include <cmath>

#include "c2f/error.hpp"

namespace c2f {

uint64_t InvertedIndex::posting_count() const {
  uint64_t n = 0;
  for (const auto& list : postings) n += list.size();
  return n;
}

InvertedIndex build_index(const std::vector<QuantizedFeature>& features,
                          uint32_t n_images, const IndexConfig& config) {
  if (n_images == 0) throw ConfigError("cannot index an empty database");
  if (config.vocab_size == 0) throw ConfigError("index needs a vocabulary");

  InvertedIndex idx;
  idx.config = config;
  idx.n_images = n_images;
  idx.postings.resize(config.vocab_size);

  for (const auto& f : features) {
    if (f.word >= config.vocab_size)
      throw ConfigError("feature word id exceeds the vocabulary size");
    if (f.image_id >= n_images)
      throw ConfigError("feature image id exceeds the database size");
    if (f.signature.width() != config.signature_bits)
      throw ConfigError("feature signature width does not match the index");
    idx.postings[f.word].push_back({f.image_id, f.signature});
  }
  for (auto& list : idx.postings)
    std::stable_sort(list.begin(), list.end(),
                     [](const Posting& a, const Posting& b) {
                       return a.image_id < b.image_id;
                     });

  // idf from distinct-image document frequency.
  idx.idf.assign(config.vocab_size, 0.0);
  for (uint32_t w = 0; w < config.vocab_size; ++w) {
    const auto& list = idx.postings[w];
    uint32_t distinct = 0;
    for (size_t i = 0; i < list.size(); ++i)
      if (i == 0 || list[i].image_id != list[i - 1].image_id) ++distinct;
    if (distinct > 0)
      idx.idf[w] = std::log(static_cast<double>(n_images) / distinct);
  }

  // Per-image l2 norm of the idf-weighted feature vector.
  std::vector<double> sq(n_images, 0.0);
  std::vector<uint32_t> feature_counts(n_images, 0);
  for (const auto& f : features) {
    sq[f.image_id] += idx.idf[f.word] * idx.idf[f.word];
    ++feature_counts[f.image_id];
  }
  idx.image_norms.resize(n_images);
  for (uint32_t d = 0; d < n_images; ++d) {
    idx.image_norms[d] = sq[d] > 0.0 ? std::sqrt(sq[d]) : 1.0;
    if (feature_counts[d] == 0) idx.featureless_images.push_back(d);
  }
  return idx;
}

LocalScores score_candidates(const std::vector<QuantizedFeature>& query,
                             const InvertedIndex& idx,
                             std::span<const uint32_t> candidates,
                             const ScoringParams& params) {
  std::vector<uint8_t> is_candidate(idx.n_images, 0);
  for (uint32_t id : candidates) {
    if (id >= idx.n_images)
      throw ConfigError("candidate image id exceeds the database size");
    is_candidate[id] = 1;
  }

  const double inv_sigma_sq = 1.0 / (params.sigma * params.sigma);
  LocalScores out;
  for (const auto& f : query) {
    if (f.word >= idx.config.vocab_size)
      throw ConfigError("query word id exceeds the index vocabulary");
    if (f.signature.width() != idx.config.signature_bits)
      throw ConfigError("query signature width does not match the index");
    const double idf = idx.idf[f.word];
    if (idf == 0.0) continue;  // contributes nothing
    const double idf_sq = idf * idf;
    for (const Posting& p : idx.postings[f.word]) {
      if (!is_candidate[p.image_id]) continue;
      ++out.postings_touched;
      const int h = hamming_distance(f.signature, p.signature);
      if (h > params.hamming_threshold) continue;
      out.scores[p.image_id] +=
          idf_sq * std::exp(-static_cast<double>(h) * h * inv_sigma_sq);
    }
  }
  if (params.normalize)
    for (auto& [id, score] : out.scores) score /= idx.image_norms[id];
  return out;
}

LocalScores score_candidates(const std::vector<QuantizedFeature>& query,
                             const InvertedIndex& idx,
                             std::span<const uint32_t> candidates) {
  return score_candidates(query, idx, candidates,
                          {idx.config.hamming_threshold, idx.config.sigma,
                           idx.config.normalize});
}

namespace {

uint64_t posting_entry_bytes(const IndexConfig& config) {
  return 4 + static_cast<uint64_t>((config.signature_bits + 7) / 8);
}

}  // namespace

MemoryReport memory_report(const InvertedIndex& idx) {
  MemoryReport report;
  report.posting_bytes = idx.posting_count() * posting_entry_bytes(idx.config);
  report.idf_bytes = static_cast<uint64_t>(idx.config.vocab_size) * 4;
  report.norm_bytes = static_cast<uint64_t>(idx.n_images) * 4;
  return report;
}

uint64_t image_posting_bytes(const InvertedIndex& idx, uint32_t image_id) {
  uint64_t entries = 0;
  for (const auto& list : idx.postings)
    for (const Posting& p : list)
      if (p.image_id == image_id) ++entries;
  return entries * posting_entry_bytes(idx.config);
}

}  // namespace c2f
