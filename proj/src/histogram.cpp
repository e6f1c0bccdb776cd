#include "c2f/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "c2f/error.hpp"

namespace c2f {

HsvHistogram hsv_histogram(const PixelImage& img, const HistogramDims& dims) {
  if (dims.h < 1 || dims.s < 1 || dims.v < 1)
    throw ConfigError("histogram dims must all be >= 1");
  HsvHistogram out;
  out.dims = dims;
  out.bins.assign(static_cast<size_t>(dims.product()), 0.0);

  const size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    double h, s, v;
    rgb_to_hsv(img.pixels[i * 3], img.pixels[i * 3 + 1], img.pixels[i * 3 + 2],
               h, s, v);
    const int hb = std::min(static_cast<int>(h / 360.0 * dims.h), dims.h - 1);
    const int sb = std::min(static_cast<int>(s * dims.s), dims.s - 1);
    const int vb = std::min(static_cast<int>(v * dims.v), dims.v - 1);
    out.bins[static_cast<size_t>(hb) * dims.s * dims.v +
             static_cast<size_t>(sb) * dims.v + vb] += 1.0;
  }
  return out;
}

HsvHistogram normalize_histogram(const HsvHistogram& h, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ConfigError("power-scaling alpha must be in (0, 1]");
  double mass = 0.0;
  for (double b : h.bins) mass += b;
  if (mass == 0.0)
    throw ConfigError("cannot normalize an all-zero histogram");

  HsvHistogram out;
  out.dims = h.dims;
  out.bins.resize(h.bins.size());
  for (size_t i = 0; i < h.bins.size(); ++i)
    out.bins[i] = std::pow(std::fabs(h.bins[i] / mass), alpha);
  return out;
}

double cosine_score(const HsvHistogram& q, const HsvHistogram& d) {
  if (q.bins.size() != d.bins.size())
    throw ConfigError("histogram dimensionality mismatch");
  double dot = 0.0, qq = 0.0, dd = 0.0;
  for (size_t i = 0; i < q.bins.size(); ++i) {
    dot += q.bins[i] * d.bins[i];
    qq += q.bins[i] * q.bins[i];
    dd += d.bins[i] * d.bins[i];
  }
  if (qq == 0.0 || dd == 0.0)
    throw ConfigError("cosine similarity undefined for a zero-norm vector");
  return dot / (std::sqrt(qq) * std::sqrt(dd));
}

HolisticRanking rank_database(const HsvHistogram& query,
                              const std::vector<HsvHistogram>& db) {
  if (db.empty()) throw ConfigError("cannot rank an empty database");
  HolisticRanking out;
  out.reserve(db.size());
  for (size_t i = 0; i < db.size(); ++i)
    out.push_back({static_cast<uint32_t>(i), cosine_score(query, db[i])});
  std::sort(out.begin(), out.end(), [](const ScoredImage& a, const ScoredImage& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.image_id < b.image_id;
  });
  return out;
}

HolisticRanking filter_top_k(const HolisticRanking& scores, int k) {
  if (k <= 0) throw ConfigError("candidate count K must be >= 1");
  const size_t keep = std::min(scores.size(), static_cast<size_t>(k));
  return HolisticRanking(scores.begin(), scores.begin() + keep);
}

}  // namespace c2f
