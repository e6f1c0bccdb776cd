#include "c2f/fusion.hpp"

#include <algorithm>

#include "c2f/error.hpp"

namespace c2f {

std::vector<uint32_t> RankList::full_ranking() const {
  std::vector<uint32_t> out;
  out.reserve(entries.size() + tail.size());
  for (const auto& e : entries) out.push_back(e.image_id);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::vector<RankEntry> fuse_scores(const LocalScores& local,
                                   const WeightedCandidateSet& weights) {
  std::vector<RankEntry> out;
  out.reserve(weights.entries.size());
  size_t matched = 0;
  for (const auto& cand : weights.entries) {
    RankEntry e;
    e.image_id = cand.image_id;
    e.holistic = cand.holistic_score;
    e.weight = cand.weight;
    if (auto it = local.scores.find(cand.image_id); it != local.scores.end()) {
      e.local = it->second;
      ++matched;
    }
    e.fused = e.local * e.weight;
    out.push_back(e);
  }
  if (matched != local.scores.size())
    throw ConfigError("local scores contain an image id the weights do not cover");

  std::sort(out.begin(), out.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.fused != b.fused) return a.fused > b.fused;
    if (a.holistic != b.holistic) return a.holistic > b.holistic;
    return a.image_id < b.image_id;
  });
  return out;
}

RankList run_query(const QueryInput& query, const RetrievalStores& db,
                   const PipelineConfig& cfg) {
  if (db.codebook.size() != db.he.vocab_size ||
      db.codebook.size() != db.index.config.vocab_size)
    throw ConfigError("stores disagree on the vocabulary size");
  if (db.he.bits != db.index.config.signature_bits)
    throw ConfigError("stores disagree on the signature width");
  if (db.index.n_images != db.image_count())
    throw ConfigError("stores disagree on the database size");

  const HolisticRanking ranking = rank_database(query.histogram, db.histograms);
  const HolisticRanking candidates = filter_top_k(ranking, cfg.candidates);
  const WeightedCandidateSet weights =
      cfg.weights_enabled ? make_weights(candidates, query.query_id)
                          : uniform_weights(candidates, query.query_id);

  std::vector<uint32_t> candidate_ids(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i)
    candidate_ids[i] = candidates[i].image_id;

  const auto query_features = quantize_descriptors(
      query.descriptors, db.codebook, db.he, cfg.multi_assign);
  const LocalScores local = score_candidates(
      query_features, db.index, candidate_ids,
      {cfg.hamming_threshold, cfg.sigma, cfg.normalize_scores});

  RankList out;
  out.query_id = query.query_id;
  out.entries = fuse_scores(local, weights);
  out.comparison_count = db.image_count() + local.postings_touched;
  out.tail.reserve(ranking.size() - candidates.size());
  for (size_t i = candidates.size(); i < ranking.size(); ++i)
    out.tail.push_back(ranking[i].image_id);
  return out;
}

}  // namespace c2f
