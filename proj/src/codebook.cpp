#include "c2f/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "c2f/error.hpp"
#include "c2f/rng.hpp"

namespace c2f {

namespace {

double sq_distance(std::span<const float> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    acc += d * d;
  }
  return acc;
}

double sq_distance(std::span<const float> a, std::span<const float> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return acc;
}

// k-means++ seeding over the descriptor rows.
std::vector<std::vector<double>> plus_plus_init(const DescriptorSet& data,
                                                uint32_t k, Rng& rng) {
  const size_t n = data.size();
  const size_t dim = static_cast<size_t>(data.dim);
  std::vector<std::vector<double>> centers;
  centers.reserve(k);

  auto as_center = [&](size_t row) {
    std::vector<double> c(dim);
    const auto r = data.row(row);
    for (size_t i = 0; i < dim; ++i) c[i] = r[i];
    return c;
  };

  centers.push_back(as_center(rng.uniform_index(n)));
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    const auto& latest = centers.back();
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      best[i] = std::min(best[i], sq_distance(data.row(i), latest));
      total += best[i];
    }
    size_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (size_t i = 0; i < n; ++i) {
        acc += best[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_index(n);
    }
    centers.push_back(as_center(pick));
  }
  return centers;
}

}  // namespace

Codebook train_kmeans(const DescriptorSet& descriptors,
                      const KMeansParams& params) {
  const size_t n = descriptors.size();
  const size_t dim = static_cast<size_t>(descriptors.dim);
  if (params.k < 1) throw ConfigError("vocabulary size k must be >= 1");
  if (n < params.k)
    throw ConfigError("corpus of " + std::to_string(n) +
                      " descriptors is smaller than k = " +
                      std::to_string(params.k));

  Rng rng(params.seed);
  auto centers = plus_plus_init(descriptors, params.k, rng);
  std::vector<uint32_t> assignment(n, 0);
  std::vector<double> point_dist(n, 0.0);

  Codebook cb;
  cb.dim = descriptors.dim;
  cb.seed = params.seed;

  bool reseeded = false;
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    // Assignment step; ties go to the smaller word id.
    bool changed = false;
    double objective = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const auto row = descriptors.row(i);
      uint32_t best_id = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (uint32_t j = 0; j < params.k; ++j) {
        const double d = sq_distance(row, std::span<const double>(centers[j]));
        if (d < best_d) {
          best_d = d;
          best_id = j;
        }
      }
      if (assignment[i] != best_id) {
        assignment[i] = best_id;
        changed = true;
      }
      point_dist[i] = best_d;
      objective += best_d;
    }
    cb.objective_history.push_back(objective);
    cb.iterations_run = iter + 1;
    if (!changed && !reseeded && iter > 0) break;

    // Update step: cluster means, with empty clusters re-seeded from the
    // point currently farthest from its centroid.
    std::vector<std::vector<double>> sums(params.k,
                                          std::vector<double>(dim, 0.0));
    std::vector<size_t> counts(params.k, 0);
    for (size_t i = 0; i < n; ++i) {
      const auto row = descriptors.row(i);
      auto& sum = sums[assignment[i]];
      for (size_t d = 0; d < dim; ++d) sum[d] += row[d];
      ++counts[assignment[i]];
    }
    reseeded = false;
    std::vector<bool> taken(n, false);
    for (uint32_t j = 0; j < params.k; ++j) {
      if (counts[j] > 0) {
        for (size_t d = 0; d < dim; ++d)
          centers[j][d] = sums[j][d] / static_cast<double>(counts[j]);
        continue;
      }
      size_t far_row = 0;
      double far_d = -1.0;
      for (size_t i = 0; i < n; ++i) {
        if (!taken[i] && point_dist[i] > far_d) {
          far_d = point_dist[i];
          far_row = i;
        }
      }
      taken[far_row] = true;
      const auto row = descriptors.row(far_row);
      for (size_t d = 0; d < dim; ++d) centers[j][d] = row[d];
      reseeded = true;
    }
  }

  cb.centroids.resize(static_cast<size_t>(params.k) * dim);
  for (uint32_t j = 0; j < params.k; ++j)
    for (size_t d = 0; d < dim; ++d)
      cb.centroids[static_cast<size_t>(j) * dim + d] =
          static_cast<float>(centers[j][d]);
  return cb;
}

uint32_t quantize(std::span<const float> descriptor, const Codebook& cb) {
  if (static_cast<int>(descriptor.size()) != cb.dim)
    throw ConfigError("descriptor dimension does not match the codebook");
  uint32_t best_id = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (uint32_t j = 0; j < cb.size(); ++j) {
    const double d = sq_distance(descriptor, cb.centroid(j));
    if (d < best_d) {
      best_d = d;
      best_id = j;
    }
  }
  return best_id;
}

std::vector<uint32_t> multi_assign(std::span<const float> descriptor,
                                   const Codebook& cb, int m) {
  if (m < 1) throw ConfigError("multiple assignment m must be >= 1");
  if (static_cast<int>(descriptor.size()) != cb.dim)
    throw ConfigError("descriptor dimension does not match the codebook");
  const uint32_t k = cb.size();
  const uint32_t keep = std::min<uint32_t>(static_cast<uint32_t>(m), k);

  std::vector<std::pair<double, uint32_t>> dists(k);
  for (uint32_t j = 0; j < k; ++j)
    dists[j] = {sq_distance(descriptor, cb.centroid(j)), j};
  std::partial_sort(dists.begin(), dists.begin() + keep, dists.end());

  std::vector<uint32_t> out(keep);
  for (uint32_t i = 0; i < keep; ++i) out[i] = dists[i].second;
  return out;
}

}  // namespace c2f
