#pragma once

#include <cstdint>
#include <vector>

#include "c2f/image.hpp"

namespace c2f {

struct HistogramDims {
  int h = 20;
  int s = 10;
  int v = 5;

  int product() const { return h * s * v; }
  bool operator==(const HistogramDims&) const = default;
};

/// HSV color histogram. Raw counts after hsv_histogram(); unit l1 mass
/// followed by a power scaling after normalize_histogram().
struct HsvHistogram {
  std::vector<double> bins;
  HistogramDims dims;
};

/// Bins every pixel of the image. Bin index is
///   floor(H/360*Hb)*Sb*Vb + floor(S*Sb)*Vb + floor(V*Vb),
/// with S = 1 or V = 1 clamped into the top bin. Returns raw counts.
HsvHistogram hsv_histogram(const PixelImage& img, const HistogramDims& dims);

/// Divides by the l1 mass, then raises each bin to the power alpha.
/// alpha must be in (0, 1]; an all-zero histogram is an error.
HsvHistogram normalize_histogram(const HsvHistogram& h, double alpha);

/// Cosine similarity between two histograms of equal dimensionality.
/// In [0, 1] for non-negative inputs; throws on a zero-norm vector.
double cosine_score(const HsvHistogram& q, const HsvHistogram& d);

struct ScoredImage {
  uint32_t image_id = 0;
  double score = 0.0;
};

/// Full database ranking, sorted descending by score, ties broken by
/// ascending image id.
using HolisticRanking = std::vector<ScoredImage>;

/// Scores the query against every database histogram (image id = position)
/// and returns the full descending ranking.
HolisticRanking rank_database(const HsvHistogram& query,
                              const std::vector<HsvHistogram>& db);

/// First min(K, N) entries of the ranking. K <= 0 is an error; K > N clamps.
HolisticRanking filter_top_k(const HolisticRanking& scores, int k);

}  // namespace c2f
