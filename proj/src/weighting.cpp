#include "c2f/weighting.hpp"

#include <algorithm>

#include "c2f/error.hpp"

namespace c2f {

std::vector<double> min_max_normalize(std::span<const double> scores) {
  if (scores.empty())
    throw ConfigError("min-max normalization needs at least one score");
  const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(scores.size());
  if (hi == lo) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(scores.size()));
    return out;
  }
  for (size_t i = 0; i < scores.size(); ++i)
    out[i] = (scores[i] - lo) / (hi - lo);
  return out;
}

WeightedCandidateSet make_weights(const HolisticRanking& candidates,
                                  uint32_t query_id) {
  if (candidates.empty())
    throw ConfigError("cannot weight an empty candidate set");
  std::vector<double> scores(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i)
    scores[i] = candidates[i].score;

  std::vector<double> normalized = min_max_normalize(scores);
  double sum = 0.0;
  for (double v : normalized) sum += v;

  WeightedCandidateSet out;
  out.query_id = query_id;
  out.entries.resize(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    out.entries[i].image_id = candidates[i].image_id;
    out.entries[i].holistic_score = candidates[i].score;
    out.entries[i].weight = normalized[i] / sum;
  }
  return out;
}

WeightedCandidateSet uniform_weights(const HolisticRanking& candidates,
                                     uint32_t query_id) {
  if (candidates.empty())
    throw ConfigError("cannot weight an empty candidate set");
  WeightedCandidateSet out;
  out.query_id = query_id;
  out.entries.resize(candidates.size());
  const double w = 1.0 / static_cast<double>(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    out.entries[i].image_id = candidates[i].image_id;
    out.entries[i].holistic_score = candidates[i].score;
    out.entries[i].weight = w;
  }
  return out;
}

}  // namespace c2f
