#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace c2f {

/// Keypoint metadata carried opaquely alongside each descriptor.
struct Keypoint {
  float x = 0.0f;
  float y = 0.0f;
  float scale = 0.0f;
};

/// A flat corpus of fixed-dimension local descriptors with owner image ids.
struct DescriptorSet {
  int dim = 0;
  std::vector<float> values;       // size() * dim, row-major
  std::vector<uint32_t> image_ids;  // one per descriptor
  std::vector<Keypoint> keypoints;  // one per descriptor

  size_t size() const { return image_ids.size(); }

  std::span<const float> row(size_t i) const {
    return {values.data() + i * static_cast<size_t>(dim),
            static_cast<size_t>(dim)};
  }

  void append(uint32_t image_id, std::span<const float> v, Keypoint kp = {});

  /// Descriptor indices belonging to one image, in corpus order.
  std::vector<size_t> rows_of_image(uint32_t image_id) const;

  /// New set holding only the given image's descriptors.
  DescriptorSet subset_for_image(uint32_t image_id) const;
};

/// rootSIFT preprocessing: l1-normalize, then element-wise square root.
/// The result has unit l2 norm. Negative or all-zero input is an error.
std::vector<float> root_preprocess(std::span<const float> descriptor);

/// Preprocesses every descriptor in the set.
DescriptorSet root_preprocess(const DescriptorSet& set);

}  // namespace c2f
