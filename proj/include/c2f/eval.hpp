#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_set>
#include <vector>

namespace c2f {

/// Relevance-judgment convention. holidays_like removes the query image
/// from its own ranking before scoring; ukbench_like keeps it (the query
/// counts as one of its own four positives).
enum class Protocol { holidays_like, ukbench_like };

struct GroundTruth {
  Protocol protocol = Protocol::holidays_like;
  std::map<uint32_t, std::vector<uint32_t>> positives;  // query -> positives
};

/// Area under the precision-recall curve for one ranking:
/// (1/|positives|) * sum over positive hits at rank r of hits_so_far/r.
/// Unranked positives contribute zero. Empty positives is an error.
double average_precision(std::span<const uint32_t> ranking,
                         const std::unordered_set<uint32_t>& positives);

using RankingsById = std::map<uint32_t, std::vector<uint32_t>>;

/// Mean AP over all ground-truth queries. Every query needs a ranking.
/// Applies the protocol's self-exclusion rule.
double mean_ap(const RankingsById& rankings, const GroundTruth& gt);

/// Mean number of positives in the top four. Requires every positive set
/// to have exactly four members. In [0, 4].
double ns_score(const RankingsById& rankings, const GroundTruth& gt);

}  // namespace c2f
