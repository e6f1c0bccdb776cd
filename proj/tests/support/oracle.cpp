#include "support/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace c2f::oracle {

std::vector<double> naive_idf(const std::vector<QuantizedFeature>& db,
                              uint32_t n_images, uint32_t vocab_size) {
  std::vector<double> idf(vocab_size, 0.0);
  for (uint32_t w = 0; w < vocab_size; ++w) {
    std::unordered_set<uint32_t> images;
    for (const auto& f : db)
      if (f.word == w) images.insert(f.image_id);
    if (!images.empty())
      idf[w] = std::log(static_cast<double>(n_images) /
                        static_cast<double>(images.size()));
  }
  return idf;
}

std::unordered_map<uint32_t, double> naive_local_scores(
    const std::vector<QuantizedFeature>& query,
    const std::vector<QuantizedFeature>& db, uint32_t n_images,
    uint32_t vocab_size, int hamming_threshold, double sigma, bool normalize,
    const std::vector<uint32_t>& candidates) {
  const auto idf = naive_idf(db, n_images, vocab_size);
  const std::unordered_set<uint32_t> cand(candidates.begin(), candidates.end());

  std::unordered_map<uint32_t, double> acc;
  for (const auto& x : query) {
    if (idf[x.word] == 0.0) continue;  // absent id means score 0
    for (const auto& y : db) {
      if (!cand.contains(y.image_id)) continue;
      if (x.word != y.word) continue;
      const int h = hamming_distance(x.signature, y.signature);
      if (h > hamming_threshold) continue;
      acc[y.image_id] += idf[x.word] * idf[x.word] *
                         std::exp(-static_cast<double>(h) * h / (sigma * sigma));
    }
  }
  if (normalize) {
    for (auto& [id, score] : acc) {
      double sq = 0.0;
      for (const auto& y : db)
        if (y.image_id == id) sq += idf[y.word] * idf[y.word];
      score /= sq > 0.0 ? std::sqrt(sq) : 1.0;
    }
  }
  return acc;
}

double naive_average_precision(const std::vector<uint32_t>& ranking,
                               const std::unordered_set<uint32_t>& positives) {
  // Materialize the precision-recall curve at every depth, then integrate
  // the area with rectangles at each recall increase.
  std::vector<double> precision(ranking.size());
  std::vector<double> recall(ranking.size());
  size_t hits = 0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    if (positives.contains(ranking[r])) ++hits;
    precision[r] = static_cast<double>(hits) / static_cast<double>(r + 1);
    recall[r] = static_cast<double>(hits) / static_cast<double>(positives.size());
  }
  double area = 0.0;
  double prev_recall = 0.0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    if (recall[r] > prev_recall) {
      area += precision[r] * (recall[r] - prev_recall);
      prev_recall = recall[r];
    }
  }
  return area;
}

uint32_t naive_quantize(std::span<const float> descriptor, const Codebook& cb) {
  return naive_multi_assign(descriptor, cb, 1)[0];
}

std::vector<uint32_t> naive_multi_assign(std::span<const float> descriptor,
                                         const Codebook& cb, int m) {
  std::vector<std::pair<double, uint32_t>> dists;
  for (uint32_t j = 0; j < cb.size(); ++j) {
    const auto c = cb.centroid(j);
    double d = 0.0;
    for (size_t i = 0; i < descriptor.size(); ++i) {
      const double delta =
          static_cast<double>(descriptor[i]) - static_cast<double>(c[i]);
      d += delta * delta;
    }
    dists.emplace_back(d, j);
  }
  std::sort(dists.begin(), dists.end());
  const size_t keep = std::min<size_t>(static_cast<size_t>(m), dists.size());
  std::vector<uint32_t> out(keep);
  for (size_t i = 0; i < keep; ++i) out[i] = dists[i].second;
  return out;
}

BinarySignature naive_sign(std::span<const float> descriptor, uint32_t word,
                           const HeParameters& he) {
  BinarySignature sig(he.bits);
  for (int b = 0; b < he.bits; ++b) {
    double dot = 0.0;
    for (int i = 0; i < he.dim; ++i)
      dot += static_cast<double>(he.projection[static_cast<size_t>(b) * he.dim + i]) *
             static_cast<double>(descriptor[i]);
    if (dot > static_cast<double>(
                  he.thresholds[static_cast<size_t>(word) * he.bits + b]))
      sig.set_bit(b, true);
  }
  return sig;
}

namespace {

std::vector<float> naive_root(std::span<const float> v) {
  double sum = 0.0;
  for (float x : v) sum += x;
  std::vector<float> out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<float>(std::sqrt(v[i] / sum));
  return out;
}

double naive_cosine(const HsvHistogram& a, const HsvHistogram& b) {
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (size_t i = 0; i < a.bins.size(); ++i) {
    dot += a.bins[i] * b.bins[i];
    aa += a.bins[i] * a.bins[i];
    bb += b.bins[i] * b.bins[i];
  }
  return dot / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<QuantizedFeature> naive_quantize_set(const DescriptorSet& raw,
                                                 const RetrievalStores& stores,
                                                 int multiplicity) {
  std::vector<QuantizedFeature> out;
  for (size_t i = 0; i < raw.size(); ++i) {
    const auto processed = naive_root(raw.row(i));
    for (uint32_t word :
         naive_multi_assign(processed, stores.codebook, multiplicity))
      out.push_back(
          {word, naive_sign(processed, word, stores.he), raw.image_ids[i]});
  }
  return out;
}

}  // namespace

std::vector<uint32_t> PipelineResult::full_ranking() const {
  std::vector<uint32_t> out;
  for (const auto& e : entries) out.push_back(e.image_id);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

PipelineResult naive_pipeline(const HsvHistogram& query_hist,
                              const DescriptorSet& query_raw,
                              const RetrievalStores& stores,
                              const DescriptorSet& db_raw,
                              const PipelineConfig& cfg) {
  const uint32_t n = stores.image_count();

  // Coarse layer: direct cosine against every image, sorted.
  std::vector<ScoredImage> ranking(n);
  for (uint32_t d = 0; d < n; ++d)
    ranking[d] = {d, naive_cosine(query_hist, stores.histograms[d])};
  std::sort(ranking.begin(), ranking.end(),
            [](const ScoredImage& a, const ScoredImage& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.image_id < b.image_id;
            });
  const size_t keep = std::min<size_t>(ranking.size(),
                                       static_cast<size_t>(cfg.candidates));

  // Adaptive weights by the direct formulas.
  std::vector<double> weights(keep);
  if (!cfg.weights_enabled) {
    std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(keep));
  } else {
    double lo = ranking[0].score, hi = ranking[0].score;
    for (size_t i = 1; i < keep; ++i) {
      lo = std::min(lo, ranking[i].score);
      hi = std::max(hi, ranking[i].score);
    }
    double sum = 0.0;
    for (size_t i = 0; i < keep; ++i) {
      weights[i] = hi == lo ? 1.0 / static_cast<double>(keep)
                            : (ranking[i].score - lo) / (hi - lo);
      sum += weights[i];
    }
    for (double& w : weights) w /= sum;
  }

  // Fine layer: naive local scores restricted to the candidates.
  std::vector<uint32_t> candidate_ids(keep);
  for (size_t i = 0; i < keep; ++i) candidate_ids[i] = ranking[i].image_id;
  const auto query_features =
      naive_quantize_set(query_raw, stores, cfg.multi_assign);
  const auto db_features = naive_quantize_set(db_raw, stores, 1);
  const auto local = naive_local_scores(
      query_features, db_features, n, stores.codebook.size(),
      cfg.hamming_threshold, cfg.sigma, cfg.normalize_scores, candidate_ids);

  PipelineResult out;
  out.entries.resize(keep);
  for (size_t i = 0; i < keep; ++i) {
    auto& e = out.entries[i];
    e.image_id = ranking[i].image_id;
    e.holistic = ranking[i].score;
    e.weight = weights[i];
    if (auto it = local.find(e.image_id); it != local.end()) e.local = it->second;
    e.fused = e.local * e.weight;
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const RankEntry& a, const RankEntry& b) {
              if (a.fused != b.fused) return a.fused > b.fused;
              if (a.holistic != b.holistic) return a.holistic > b.holistic;
              return a.image_id < b.image_id;
            });
  for (size_t i = keep; i < ranking.size(); ++i)
    out.tail.push_back(ranking[i].image_id);
  return out;
}

std::vector<uint32_t> naive_bow_ranking(const HsvHistogram& query_hist,
                                        const DescriptorSet& query_raw,
                                        const RetrievalStores& stores,
                                        const DescriptorSet& db_raw,
                                        const PipelineConfig& cfg) {
  const uint32_t n = stores.image_count();
  std::vector<uint32_t> all_ids(n);
  for (uint32_t d = 0; d < n; ++d) all_ids[d] = d;
  const auto query_features =
      naive_quantize_set(query_raw, stores, cfg.multi_assign);
  const auto db_features = naive_quantize_set(db_raw, stores, 1);
  const auto local = naive_local_scores(
      query_features, db_features, n, stores.codebook.size(),
      cfg.hamming_threshold, cfg.sigma, cfg.normalize_scores, all_ids);

  struct Row {
    uint32_t id;
    double local, holistic;
  };
  std::vector<Row> rows(n);
  for (uint32_t d = 0; d < n; ++d) {
    rows[d].id = d;
    rows[d].local = local.contains(d) ? local.at(d) : 0.0;
    rows[d].holistic = naive_cosine(query_hist, stores.histograms[d]);
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.local != b.local) return a.local > b.local;
    if (a.holistic != b.holistic) return a.holistic > b.holistic;
    return a.id < b.id;
  });
  std::vector<uint32_t> out(n);
  for (uint32_t d = 0; d < n; ++d) out[d] = rows[d].id;
  return out;
}

BinarySignature random_signature(Rng& rng, int width) {
  BinarySignature sig(width);
  for (int i = 0; i < width; ++i)
    if (rng.uniform() < 0.5) sig.set_bit(i, true);
  return sig;
}

}  // namespace c2f::oracle
