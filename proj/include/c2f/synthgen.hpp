#pragma once

#include <cstdint>
#include <vector>

#include "c2f/descriptor.hpp"
#include "c2f/eval.hpp"
#include "c2f/image.hpp"

namespace c2f {

/// Recipe for a seeded synthetic retrieval corpus. Groups of images share a
/// hue palette (so holistic filtering can find them) and a set of planted
/// descriptor clusters (so local refinement can rank within them);
/// distractors draw from disjoint palettes and clusters. color_separation
/// controls how much of each image keeps its own palette versus a palette
/// shared by everything; descriptor_noise is the fraction of descriptors
/// drawn from arbitrary clusters.
struct SynthSpec {
  int n_groups = 4;
  int group_size = 4;
  int n_distractors = 0;
  uint64_t seed = 1;
  double color_separation = 1.0;  // in [0, 1]
  double descriptor_noise = 0.0;  // in [0, 1]
  Protocol protocol = Protocol::ukbench_like;

  int image_width = 24;
  int image_height = 24;
  int descriptor_dim = 16;
  int descriptors_per_image = 40;
  int clusters_per_group = 6;
  int distractor_clusters = 12;

  int image_count() const { return n_groups * group_size + n_distractors; }
};

struct SynthCorpus {
  std::vector<PixelImage> images;   // image id = position
  DescriptorSet descriptors;        // raw, SIFT-like non-negative
  GroundTruth ground_truth;
  std::vector<int32_t> group_of;    // -1 for distractors
};

/// Deterministic per spec: the same spec yields a bit-identical corpus, and
/// a corpus with fewer distractors is a prefix of one with more.
SynthCorpus generate(const SynthSpec& spec);

}  // namespace c2f
