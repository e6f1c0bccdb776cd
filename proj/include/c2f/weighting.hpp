#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "c2f/histogram.hpp"

namespace c2f {

struct WeightedCandidate {
  uint32_t image_id = 0;
  double holistic_score = 0.0;
  double weight = 0.0;
};

/// The K surviving candidates with their adaptive weights, sorted
/// descending by holistic score. Weights sum to 1.
struct WeightedCandidateSet {
  uint32_t query_id = 0;
  std::vector<WeightedCandidate> entries;
};

/// Maps each score to (s - min)/(max - min). When all scores are equal the
/// ratio is 0/0; that degenerate case returns the uniform value 1/K instead.
std::vector<double> min_max_normalize(std::span<const double> scores);

/// Min-max normalizes the candidates' holistic scores, then divides by
/// their sum so the weights total 1. Higher score never gets lower weight.
WeightedCandidateSet make_weights(const HolisticRanking& candidates,
                                  uint32_t query_id = 0);

/// Uniform 1/K weights, the weights-disabled setting.
WeightedCandidateSet uniform_weights(const HolisticRanking& candidates,
                                     uint32_t query_id = 0);

}  // namespace c2f
