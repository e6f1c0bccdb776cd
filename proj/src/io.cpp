#include "c2f/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "c2f/error.hpp"

namespace c2f::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "store formats assume a little-endian host");

class Writer {
 public:
  void u32(uint32_t v) { append(&v, 4); }
  void u64(uint64_t v) { append(&v, 8); }
  void f32(float v) { append(&v, 4); }
  void bytes(const uint8_t* p, size_t n) {
    buf_.insert(buf_.end(), p, p + n);
  }
  void magic(const char m[4]) { bytes(reinterpret_cast<const uint8_t*>(m), 4); }

  void save(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write store file: " + path);
    out.write(reinterpret_cast<const char*>(buf_.data()),
              static_cast<std::streamsize>(buf_.size()));
    if (!out) throw Error("short write to store file: " + path);
  }

 private:
  void append(const void* p, size_t n) {
    const auto* b = static_cast<const uint8_t*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }
  std::vector<uint8_t> buf_;
};

class Reader {
 public:
  Reader(const std::string& path)
      : path_(path), buf_(read_file(path)) {}

  uint32_t u32() { return get<uint32_t>(); }
  uint64_t u64() { return get<uint64_t>(); }
  float f32() { return get<float>(); }

  void expect_magic(const char m[4]) {
    if (buf_.size() < pos_ + 4 || std::memcmp(buf_.data() + pos_, m, 4) != 0)
      throw DecodeError(path_ + ": bad magic, expected " +
                        std::string(m, 4));
    pos_ += 4;
  }

  const uint8_t* raw(size_t n) {
    need(n);
    const uint8_t* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }

  void expect_end() const {
    if (pos_ != buf_.size())
      throw DecodeError(path_ + ": trailing bytes after byte " +
                        std::to_string(pos_));
  }

 private:
  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, buf_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  void need(size_t n) const {
    if (buf_.size() - pos_ < n)
      throw DecodeError(path_ + ": truncated at byte " + std::to_string(pos_));
  }

  std::string path_;
  std::vector<uint8_t> buf_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

void write_histograms(const std::string& path,
                      const std::vector<HsvHistogram>& histograms) {
  Writer w;
  w.magic("C2FH");
  const uint32_t p =
      histograms.empty() ? 0 : static_cast<uint32_t>(histograms[0].bins.size());
  w.u32(p);
  w.u32(static_cast<uint32_t>(histograms.size()));
  for (const auto& h : histograms) {
    if (h.bins.size() != p)
      throw ConfigError("histogram store requires uniform dimensionality");
    for (double b : h.bins) w.f32(static_cast<float>(b));
  }
  w.save(path);
}

std::vector<HsvHistogram> read_histograms(const std::string& path,
                                          const HistogramDims& dims) {
  Reader r(path);
  r.expect_magic("C2FH");
  const uint32_t p = r.u32();
  const uint32_t count = r.u32();
  if (p != static_cast<uint32_t>(dims.product()))
    throw ConfigError(path + ": histogram dimensionality " +
                      std::to_string(p) + " does not match configured bins");
  std::vector<HsvHistogram> out(count);
  for (auto& h : out) {
    h.dims = dims;
    h.bins.resize(p);
    for (uint32_t i = 0; i < p; ++i) h.bins[i] = r.f32();
  }
  r.expect_end();
  return out;
}

void write_descriptors(const std::string& path, const DescriptorSet& set) {
  Writer w;
  w.magic("C2FD");
  w.u32(static_cast<uint32_t>(set.dim));
  w.u32(static_cast<uint32_t>(set.size()));
  for (size_t i = 0; i < set.size(); ++i) {
    w.u32(set.image_ids[i]);
    w.f32(set.keypoints[i].x);
    w.f32(set.keypoints[i].y);
    w.f32(set.keypoints[i].scale);
    for (float v : set.row(i)) w.f32(v);
  }
  w.save(path);
}

DescriptorSet read_descriptors(const std::string& path) {
  Reader r(path);
  r.expect_magic("C2FD");
  DescriptorSet set;
  set.dim = static_cast<int>(r.u32());
  const uint32_t count = r.u32();
  if (set.dim < 1) throw DecodeError(path + ": descriptor dimension must be >= 1");
  set.values.reserve(static_cast<size_t>(count) * set.dim);
  set.image_ids.reserve(count);
  set.keypoints.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    set.image_ids.push_back(r.u32());
    Keypoint kp;
    kp.x = r.f32();
    kp.y = r.f32();
    kp.scale = r.f32();
    set.keypoints.push_back(kp);
    for (int d = 0; d < set.dim; ++d) set.values.push_back(r.f32());
  }
  r.expect_end();
  return set;
}

void write_codebook(const std::string& path, const Codebook& cb) {
  Writer w;
  w.magic("C2FC");
  w.u32(static_cast<uint32_t>(cb.dim));
  w.u32(cb.size());
  for (float v : cb.centroids) w.f32(v);
  w.u64(cb.seed);
  w.save(path);
}

Codebook read_codebook(const std::string& path) {
  Reader r(path);
  r.expect_magic("C2FC");
  Codebook cb;
  cb.dim = static_cast<int>(r.u32());
  const uint32_t k = r.u32();
  if (cb.dim < 1 || k < 1)
    throw DecodeError(path + ": bad codebook header");
  cb.centroids.resize(static_cast<size_t>(k) * cb.dim);
  for (float& v : cb.centroids) v = r.f32();
  cb.seed = r.u64();
  r.expect_end();
  return cb;
}

void write_he(const std::string& path, const HeParameters& he) {
  Writer w;
  w.magic("C2FE");
  w.u32(static_cast<uint32_t>(he.dim));
  w.u32(static_cast<uint32_t>(he.bits));
  w.u32(he.vocab_size);
  for (float v : he.projection) w.f32(v);
  for (float v : he.thresholds) w.f32(v);
  w.u64(he.seed);
  w.save(path);
}

HeParameters read_he(const std::string& path) {
  Reader r(path);
  r.expect_magic("C2FE");
  HeParameters he;
  he.dim = static_cast<int>(r.u32());
  he.bits = static_cast<int>(r.u32());
  he.vocab_size = r.u32();
  if (he.dim < 1 || he.bits < 1 || he.bits > he.dim || he.vocab_size < 1)
    throw DecodeError(path + ": bad embedding header");
  he.projection.resize(static_cast<size_t>(he.bits) * he.dim);
  for (float& v : he.projection) v = r.f32();
  he.thresholds.resize(static_cast<size_t>(he.vocab_size) * he.bits);
  for (float& v : he.thresholds) v = r.f32();
  he.seed = r.u64();
  r.expect_end();
  return he;
}

void write_index(const std::string& path, const InvertedIndex& idx) {
  Writer w;
  w.magic("C2FI");
  w.u32(idx.config.vocab_size);
  w.u32(static_cast<uint32_t>(idx.config.signature_bits));
  w.u32(static_cast<uint32_t>(idx.config.hamming_threshold));
  w.f32(static_cast<float>(idx.config.sigma));
  w.u32(idx.n_images);
  const int sig_bytes = (idx.config.signature_bits + 7) / 8;
  std::vector<uint8_t> scratch(sig_bytes);
  for (const auto& list : idx.postings) {
    w.u32(static_cast<uint32_t>(list.size()));
    for (const Posting& p : list) {
      w.u32(p.image_id);
      p.signature.to_bytes(scratch.data());
      w.bytes(scratch.data(), scratch.size());
    }
  }
  for (double n : idx.image_norms) w.f32(static_cast<float>(n));
  for (double v : idx.idf) w.f32(static_cast<float>(v));
  w.save(path);
}

InvertedIndex read_index(const std::string& path) {
  Reader r(path);
  r.expect_magic("C2FI");
  InvertedIndex idx;
  idx.config.vocab_size = r.u32();
  idx.config.signature_bits = static_cast<int>(r.u32());
  idx.config.hamming_threshold = static_cast<int>(r.u32());
  idx.config.sigma = r.f32();
  idx.n_images = r.u32();
  if (idx.config.vocab_size < 1 || idx.config.signature_bits < 1 ||
      idx.config.signature_bits > BinarySignature::kMaxBits || idx.n_images < 1)
    throw DecodeError(path + ": bad index header");

  const int sig_bytes = (idx.config.signature_bits + 7) / 8;
  idx.postings.resize(idx.config.vocab_size);
  std::vector<uint32_t> feature_counts(idx.n_images, 0);
  for (auto& list : idx.postings) {
    const uint32_t count = r.u32();
    list.resize(count);
    for (Posting& p : list) {
      p.image_id = r.u32();
      if (p.image_id >= idx.n_images)
        throw DecodeError(path + ": posting image id out of range");
      p.signature = BinarySignature::from_bytes(
          r.raw(static_cast<size_t>(sig_bytes)), idx.config.signature_bits);
      ++feature_counts[p.image_id];
    }
  }
  idx.image_norms.resize(idx.n_images);
  for (double& n : idx.image_norms) n = r.f32();
  idx.idf.resize(idx.config.vocab_size);
  for (double& v : idx.idf) v = r.f32();
  r.expect_end();
  for (uint32_t d = 0; d < idx.n_images; ++d)
    if (feature_counts[d] == 0) idx.featureless_images.push_back(d);
  return idx;
}

void write_ground_truth(const std::string& path, const GroundTruth& gt) {
  std::ostringstream out;
  for (const auto& [query, positives] : gt.positives) {
    out << query << ":";
    for (uint32_t p : positives) out << " " << p;
    out << "\n";
  }
  const std::string text = out.str();
  write_file(path, {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

GroundTruth read_ground_truth(const std::string& path, Protocol protocol) {
  const auto bytes = read_file(path);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  GroundTruth gt;
  gt.protocol = protocol;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw DecodeError(path + ":" + std::to_string(line_no) +
                        ": expected 'query_id: pos_id ...'");
    uint32_t query = 0;
    try {
      query = static_cast<uint32_t>(std::stoul(line.substr(0, colon)));
    } catch (const std::exception&) {
      throw DecodeError(path + ":" + std::to_string(line_no) +
                        ": bad query id");
    }
    std::istringstream rest(line.substr(colon + 1));
    std::vector<uint32_t> positives;
    std::string token;
    while (rest >> token) {
      try {
        positives.push_back(static_cast<uint32_t>(std::stoul(token)));
      } catch (const std::exception&) {
        throw DecodeError(path + ":" + std::to_string(line_no) +
                          ": bad positive id '" + token + "'");
      }
    }
    if (positives.empty())
      throw DecodeError(path + ":" + std::to_string(line_no) +
                        ": query has no positives");
    gt.positives[query] = std::move(positives);
  }
  return gt;
}

void write_lines(const std::string& path,
                 const std::vector<std::string>& lines) {
  std::ostringstream out;
  for (const auto& l : lines) out << l << "\n";
  const std::string text = out.str();
  write_file(path, {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

std::vector<std::string> read_lines(const std::string& path) {
  const auto bytes = read_file(path);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

uint64_t fnv1a64(std::span<const uint8_t> bytes, uint64_t basis) {
  uint64_t h = basis;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

}  // namespace c2f::io
