#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "c2f/descriptor.hpp"

namespace c2f {

/// Visual vocabulary: k centroids of dimension dim, plus training metadata.
struct Codebook {
  int dim = 0;
  std::vector<float> centroids;  // size() * dim, row-major
  uint64_t seed = 0;
  int iterations_run = 0;
  std::vector<double> objective_history;  // within-cluster SSE per iteration

  uint32_t size() const {
    return dim == 0 ? 0
                    : static_cast<uint32_t>(centroids.size() /
                                            static_cast<size_t>(dim));
  }
  std::span<const float> centroid(uint32_t word) const {
    return {centroids.data() + static_cast<size_t>(word) * dim,
            static_cast<size_t>(dim)};
  }
};

struct KMeansParams {
  uint32_t k = 0;
  int max_iterations = 25;
  uint64_t seed = 0;
};

/// Lloyd's k-means with k-means++ seeding. Deterministic given corpus order
/// and seed. Empty clusters are re-seeded from the point farthest from its
/// centroid. Throws when the corpus holds fewer descriptors than k.
Codebook train_kmeans(const DescriptorSet& descriptors,
                      const KMeansParams& params);

/// Id of the nearest centroid by Euclidean distance, ties to the smaller id.
uint32_t quantize(std::span<const float> descriptor, const Codebook& cb);

/// Ids of the m nearest centroids, nearest first. m > k clamps to k.
std::vector<uint32_t> multi_assign(std::span<const float> descriptor,
                                   const Codebook& cb, int m);

}  // namespace c2f
