#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "c2f/codebook.hpp"
#include "c2f/descriptor.hpp"
#include "c2f/embedding.hpp"
#include "c2f/eval.hpp"
#include "c2f/histogram.hpp"
#include "c2f/index.hpp"

namespace c2f::io {

// Little-endian binary store formats. Magics: C2FH histograms, C2FD
// descriptors, C2FC codebook, C2FE embedding parameters, C2FI index.

/// Histogram store: magic, u32 P, u32 count, count*P f32 values. Image ids
/// are implicit by order; the image list lives in a sidecar manifest.
void write_histograms(const std::string& path,
                      const std::vector<HsvHistogram>& histograms);
std::vector<HsvHistogram> read_histograms(const std::string& path,
                                          const HistogramDims& dims);

/// Descriptor store: magic, u32 D, u32 count, then per record
/// u32 image_id, f32 x, f32 y, f32 scale, D*f32 values.
void write_descriptors(const std::string& path, const DescriptorSet& set);
DescriptorSet read_descriptors(const std::string& path);

/// Codebook store: magic, u32 D, u32 k, k*D f32 centroids, u64 seed.
void write_codebook(const std::string& path, const Codebook& cb);
Codebook read_codebook(const std::string& path);

/// Embedding store: magic, u32 D, u32 d_b, u32 k, d_b*D f32 projection,
/// k*d_b f32 thresholds, u64 seed.
void write_he(const std::string& path, const HeParameters& he);
HeParameters read_he(const std::string& path);

/// Index store: magic, u32 k, u32 d_b, u32 h_t, f32 sigma, u32 n_images,
/// per word u32 count + postings (u32 image_id, d_b/8 signature bytes),
/// then n_images f32 norms, then k f32 idf values.
void write_index(const std::string& path, const InvertedIndex& idx);
InvertedIndex read_index(const std::string& path);

/// Ground-truth text file: one line per query, "query_id: pos_id pos_id ...".
void write_ground_truth(const std::string& path, const GroundTruth& gt);
GroundTruth read_ground_truth(const std::string& path, Protocol protocol);

/// UTF-8 line list (image paths, one per line).
void write_lines(const std::string& path, const std::vector<std::string>& lines);
std::vector<std::string> read_lines(const std::string& path);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const uint8_t> bytes);

/// FNV-1a 64-bit digest, used for corpus fingerprints.
uint64_t fnv1a64(std::span<const uint8_t> bytes, uint64_t basis = 0xcbf29ce484222325ULL);
std::string hex64(uint64_t value);

}  // namespace c2f::io
