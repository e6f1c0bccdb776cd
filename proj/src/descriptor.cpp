#include "c2f/descriptor.hpp"

#include <cmath>

#include "c2f/error.hpp"

namespace c2f {

void DescriptorSet::append(uint32_t image_id, std::span<const float> v,
                           Keypoint kp) {
  if (dim == 0) dim = static_cast<int>(v.size());
  if (static_cast<int>(v.size()) != dim)
    throw ConfigError("descriptor dimensionality mismatch in corpus");
  values.insert(values.end(), v.begin(), v.end());
  image_ids.push_back(image_id);
  keypoints.push_back(kp);
}

std::vector<size_t> DescriptorSet::rows_of_image(uint32_t image_id) const {
  std::vector<size_t> rows;
  for (size_t i = 0; i < size(); ++i)
    if (image_ids[i] == image_id) rows.push_back(i);
  return rows;
}

DescriptorSet DescriptorSet::subset_for_image(uint32_t image_id) const {
  DescriptorSet out;
  out.dim = dim;
  for (size_t i : rows_of_image(image_id))
    out.append(image_id, row(i), keypoints[i]);
  return out;
}

std::vector<float> root_preprocess(std::span<const float> descriptor) {
  double mass = 0.0;
  for (float v : descriptor) {
    if (v < 0.0f)
      throw ConfigError("rootSIFT preprocessing requires non-negative values");
    mass += v;
  }
  if (mass == 0.0)
    throw ConfigError("cannot preprocess an all-zero descriptor");
  std::vector<float> out(descriptor.size());
  for (size_t i = 0; i < descriptor.size(); ++i)
    out[i] = static_cast<float>(std::sqrt(descriptor[i] / mass));
  return out;
}

DescriptorSet root_preprocess(const DescriptorSet& set) {
  DescriptorSet out;
  out.dim = set.dim;
  out.values.reserve(set.values.size());
  out.image_ids = set.image_ids;
  out.keypoints = set.keypoints;
  for (size_t i = 0; i < set.size(); ++i) {
    const auto processed = root_preprocess(set.row(i));
    out.values.insert(out.values.end(), processed.begin(), processed.end());
  }
  return out;
}

}  // namespace c2f
