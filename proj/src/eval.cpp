#include "c2f/eval.hpp"

#include <algorithm>

#include "c2f/error.hpp"

namespace c2f {

double average_precision(std::span<const uint32_t> ranking,
                         const std::unordered_set<uint32_t>& positives) {
  if (positives.empty())
    throw ConfigError("average precision needs a non-empty positive set");
  size_t hits = 0;
  double sum = 0.0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    if (positives.contains(ranking[r])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
  }
  return sum / static_cast<double>(positives.size());
}

namespace {

std::vector<uint32_t> protocol_ranking(std::span<const uint32_t> ranking,
                                       uint32_t query_id, Protocol protocol) {
  std::vector<uint32_t> out(ranking.begin(), ranking.end());
  if (protocol == Protocol::holidays_like)
    std::erase(out, query_id);
  return out;
}

const std::vector<uint32_t>& ranking_for(const RankingsById& rankings,
                                         uint32_t query_id) {
  auto it = rankings.find(query_id);
  if (it == rankings.end())
    throw ConfigError("no ranking supplied for query " +
                      std::to_string(query_id));
  return it->second;
}

}  // namespace

double mean_ap(const RankingsById& rankings, const GroundTruth& gt) {
  if (gt.positives.empty())
    throw ConfigError("ground truth holds no queries");
  double sum = 0.0;
  for (const auto& [query_id, positives] : gt.positives) {
    const auto adjusted =
        protocol_ranking(ranking_for(rankings, query_id), query_id, gt.protocol);
    sum += average_precision(
        adjusted, std::unordered_set<uint32_t>(positives.begin(), positives.end()));
  }
  return sum / static_cast<double>(gt.positives.size());
}

double ns_score(const RankingsById& rankings, const GroundTruth& gt) {
  if (gt.positives.empty())
    throw ConfigError("ground truth holds no queries");
  double sum = 0.0;
  for (const auto& [query_id, positives] : gt.positives) {
    if (positives.size() != 4)
      throw ConfigError("N-S protocol needs groups of exactly 4, query " +
                        std::to_string(query_id) + " has " +
                        std::to_string(positives.size()));
    const auto& ranking = ranking_for(rankings, query_id);
    const std::unordered_set<uint32_t> pos(positives.begin(), positives.end());
    size_t correct = 0;
    const size_t depth = std::min<size_t>(4, ranking.size());
    for (size_t r = 0; r < depth; ++r)
      if (pos.contains(ranking[r])) ++correct;
    sum += static_cast<double>(correct);
  }
  return sum / static_cast<double>(gt.positives.size());
}

}  // namespace c2f
