#include "c2f/synthgen.hpp"

#include <algorithm>
#include <cmath>

#include "c2f/error.hpp"
#include "c2f/rng.hpp"

namespace c2f {

namespace {

constexpr uint64_t kImageStream = 0x100000;
constexpr uint64_t kClusterStream = 0x200000;
constexpr uint64_t kFeatureStream = 0x300000;
constexpr uint64_t kGroupPointStream = 0x400000;

// Spread of a cluster's base points, and the much smaller perturbation a
// group member applies to the shared points. Keeping the second an order of
// magnitude below the first is what lets binary signatures tell true
// correspondences from other residents of the same Voronoi cell.
constexpr double kPointSpread = 0.02;
constexpr double kViewJitter = 0.003;

void validate(const SynthSpec& spec) {
  if (spec.n_groups < 0 || spec.n_distractors < 0)
    throw ConfigError("synthetic corpus counts must be >= 0");
  if (spec.n_groups > 0 && spec.group_size < 2)
    throw ConfigError("synthetic groups need at least 2 members");
  if (spec.color_separation < 0.0 || spec.color_separation > 1.0)
    throw ConfigError("color separation must lie in [0, 1]");
  if (spec.descriptor_noise < 0.0 || spec.descriptor_noise > 1.0)
    throw ConfigError("descriptor noise must lie in [0, 1]");
  if (spec.image_width < 1 || spec.image_height < 1)
    throw ConfigError("synthetic image size must be >= 1");
  if (spec.descriptor_dim < 1 || spec.descriptors_per_image < 0)
    throw ConfigError("bad synthetic descriptor parameters");
  if (spec.image_count() == 0)
    throw ConfigError("synthetic corpus would be empty");
}

struct Palette {
  double hue;     // base hue, jittered per pixel
  double s_lo, s_hi;
  double v_lo, v_hi;
};

// Group palettes sit at hue-bin centers of the default 20-bin layout;
// distractor palettes sit halfway between them at a low S/V band, so the two
// occupy disjoint histogram support when no global mixing is applied.
Palette group_palette(const SynthSpec& spec, int group) {
  const double step = 360.0 / std::max(spec.n_groups, 1);
  return {step * group + 9.0, 0.86, 0.98, 0.86, 0.98};
}

Palette distractor_palette(const SynthSpec& spec, int i) {
  const int g = std::max(spec.n_groups, 1);
  const double step = 360.0 / g;
  return {step * (i % g) + 9.0 + step / 2.0, 0.25, 0.45, 0.35, 0.55};
}

PixelImage render(const SynthSpec& spec, const Palette& own, Rng& rng) {
  PixelImage img;
  img.width = spec.image_width;
  img.height = spec.image_height;
  img.pixels.resize(img.pixel_count() * 3);
  for (size_t p = 0; p < img.pixel_count(); ++p) {
    double h, s, v;
    if (rng.uniform() < spec.color_separation) {
      h = own.hue + rng.uniform(-4.0, 4.0);
      s = rng.uniform(own.s_lo, own.s_hi);
      v = rng.uniform(own.v_lo, own.v_hi);
    } else {
      h = rng.uniform(0.0, 360.0);
      s = rng.uniform(0.86, 0.98);
      v = rng.uniform(0.86, 0.98);
    }
    hsv_to_rgb(h, s, v, img.pixels[p * 3], img.pixels[p * 3 + 1],
               img.pixels[p * 3 + 2]);
  }
  return img;
}

std::vector<std::vector<float>> make_cluster_centers(const SynthSpec& spec,
                                                     int count) {
  std::vector<std::vector<float>> centers(count);
  const int boosted = std::max(2, spec.descriptor_dim / 4);
  for (int c = 0; c < count; ++c) {
    Rng rng(mix_seed(spec.seed, kClusterStream + c));
    auto& center = centers[c];
    center.assign(spec.descriptor_dim, 0.05f);
    std::vector<int> picked;
    while (static_cast<int>(picked.size()) < boosted) {
      const int coord =
          static_cast<int>(rng.uniform_index(spec.descriptor_dim));
      if (std::find(picked.begin(), picked.end(), coord) == picked.end())
        picked.push_back(coord);
    }
    for (int coord : picked)
      center[coord] = static_cast<float>(rng.uniform(0.6, 1.0));
  }
  return centers;
}

}  // namespace

SynthCorpus generate(const SynthSpec& spec) {
  validate(spec);

  const int group_images = spec.n_groups * spec.group_size;
  const int total = spec.image_count();
  const int universe =
      spec.n_groups * spec.clusters_per_group + spec.distractor_clusters;
  const auto centers = make_cluster_centers(spec, std::max(universe, 1));

  SynthCorpus corpus;
  corpus.images.reserve(total);
  corpus.group_of.reserve(total);
  corpus.descriptors.dim = spec.descriptor_dim;
  corpus.ground_truth.protocol = spec.protocol;

  auto fresh_point = [&](Rng& rng, int cluster_lo, int cluster_count) {
    int cluster;
    if (cluster_count > 0) {
      cluster = cluster_lo + static_cast<int>(rng.uniform_index(cluster_count));
    } else {
      cluster = static_cast<int>(rng.uniform_index(universe));
    }
    std::vector<float> value(spec.descriptor_dim);
    for (int i = 0; i < spec.descriptor_dim; ++i) {
      const double v = centers[cluster][i] + kPointSpread * rng.gaussian();
      value[i] = static_cast<float>(std::max(v, 0.0));
    }
    return value;
  };

  auto emit_image = [&](int id, const Palette& palette,
                        std::span<const std::vector<float>> base_points,
                        int cluster_lo, int cluster_count) {
    Rng pixel_rng(mix_seed(spec.seed, kImageStream + id));
    corpus.images.push_back(render(spec, palette, pixel_rng));

    Rng feat_rng(mix_seed(spec.seed, kFeatureStream + id));
    for (int m = 0; m < spec.descriptors_per_image; ++m) {
      std::vector<float> value;
      const bool off_cluster = feat_rng.uniform() < spec.descriptor_noise;
      if (off_cluster || base_points.empty()) {
        // An unrelated point anywhere in the universe (or a fresh own-palette
        // point for distractors, which share no base points).
        value = fresh_point(feat_rng, off_cluster ? 0 : cluster_lo,
                            off_cluster ? universe : cluster_count);
      } else {
        // The group's shared point, perturbed slightly per image.
        value = base_points[m];
        for (int i = 0; i < spec.descriptor_dim; ++i) {
          const double v = value[i] + kViewJitter * feat_rng.gaussian();
          value[i] = static_cast<float>(std::max(v, 0.0));
        }
      }
      Keypoint kp;
      kp.x = static_cast<float>(feat_rng.uniform(0.0, spec.image_width));
      kp.y = static_cast<float>(feat_rng.uniform(0.0, spec.image_height));
      kp.scale = static_cast<float>(feat_rng.uniform(1.0, 4.0));
      corpus.descriptors.append(static_cast<uint32_t>(id), value, kp);
    }
  };

  for (int g = 0; g < spec.n_groups; ++g) {
    // Shared keypoints of the group: every member carries a jittered copy.
    Rng point_rng(mix_seed(spec.seed, kGroupPointStream + g));
    std::vector<std::vector<float>> base_points;
    base_points.reserve(spec.descriptors_per_image);
    for (int m = 0; m < spec.descriptors_per_image; ++m)
      base_points.push_back(fresh_point(point_rng, g * spec.clusters_per_group,
                                        spec.clusters_per_group));

    const Palette palette = group_palette(spec, g);
    for (int j = 0; j < spec.group_size; ++j) {
      emit_image(g * spec.group_size + j, palette, base_points,
                 g * spec.clusters_per_group, spec.clusters_per_group);
      corpus.group_of.push_back(g);
    }
  }
  for (int i = 0; i < spec.n_distractors; ++i) {
    emit_image(group_images + i, distractor_palette(spec, i), {},
               spec.n_groups * spec.clusters_per_group,
               spec.distractor_clusters);
    corpus.group_of.push_back(-1);
  }

  for (int g = 0; g < spec.n_groups; ++g) {
    std::vector<uint32_t> members(spec.group_size);
    for (int j = 0; j < spec.group_size; ++j)
      members[j] = static_cast<uint32_t>(g * spec.group_size + j);
    if (spec.protocol == Protocol::ukbench_like) {
      for (uint32_t m : members) corpus.ground_truth.positives[m] = members;
    } else {
      std::vector<uint32_t> others(members.begin() + 1, members.end());
      corpus.ground_truth.positives[members[0]] = others;
    }
  }
  return corpus;
}

}  // namespace c2f
