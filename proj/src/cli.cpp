#include "c2f/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "c2f/error.hpp"
#include "c2f/harness.hpp"
#include "c2f/io.hpp"
#include "c2f/rng.hpp"

namespace c2f::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kConfigVersion = 1;

json config_to_json(const PipelineConfig& cfg) {
  return json{{"version", kConfigVersion},
              {"candidates", cfg.candidates},
              {"alpha", cfg.alpha},
              {"h_bins", cfg.hsv_dims.h},
              {"s_bins", cfg.hsv_dims.s},
              {"v_bins", cfg.hsv_dims.v},
              {"codebook_size", cfg.vocab_size},
              {"signature_bits", cfg.signature_bits},
              {"hamming_threshold", cfg.hamming_threshold},
              {"sigma", cfg.sigma},
              {"multi_assign", cfg.multi_assign},
              {"weights", cfg.weights_enabled},
              {"normalize_scores", cfg.normalize_scores},
              {"kmeans_iterations", cfg.kmeans_iterations},
              {"seed", cfg.seed}};
}

PipelineConfig config_from_json(const json& j, PipelineConfig cfg) {
  if (j.contains("version") && j["version"].get<int>() != kConfigVersion)
    throw ConfigError("unsupported config version " +
                      j["version"].dump());
  auto get = [&j](const char* key, auto& out) {
    if (j.contains(key)) out = j[key].get<std::decay_t<decltype(out)>>();
  };
  get("candidates", cfg.candidates);
  get("alpha", cfg.alpha);
  get("h_bins", cfg.hsv_dims.h);
  get("s_bins", cfg.hsv_dims.s);
  get("v_bins", cfg.hsv_dims.v);
  get("codebook_size", cfg.vocab_size);
  get("signature_bits", cfg.signature_bits);
  get("hamming_threshold", cfg.hamming_threshold);
  get("sigma", cfg.sigma);
  get("multi_assign", cfg.multi_assign);
  get("weights", cfg.weights_enabled);
  get("normalize_scores", cfg.normalize_scores);
  get("kmeans_iterations", cfg.kmeans_iterations);
  get("seed", cfg.seed);
  return cfg;
}

PipelineConfig load_config_file(const std::string& path, PipelineConfig cfg) {
  const auto bytes = io::read_file(path);
  json j = json::parse(bytes.begin(), bytes.end());
  return config_from_json(j, cfg);
}

std::string file_digest(const std::string& path) {
  return io::hex64(io::fnv1a64(io::read_file(path)));
}

// The corpus fingerprint covers the image list, the descriptor bytes and
// the extraction config, so stores built from different corpora or configs
// never mix silently.
std::string corpus_fingerprint(const std::string& image_list_path,
                               const std::string& descriptor_path,
                               const PipelineConfig& cfg) {
  uint64_t h = io::fnv1a64(io::read_file(image_list_path));
  h = io::fnv1a64(io::read_file(descriptor_path), h);
  const std::string cfg_text = config_to_json(cfg).dump();
  h = io::fnv1a64(
      {reinterpret_cast<const uint8_t*>(cfg_text.data()), cfg_text.size()}, h);
  return io::hex64(h);
}

struct Manifest {
  std::string dir;
  std::string fingerprint;
  PipelineConfig config;
  uint32_t n_images = 0;
  std::string images_path;       // image list file
  std::string descriptors_path;  // source descriptor store
  std::map<std::string, std::string> digests;  // store name -> digest

  std::string store_path(const std::string& name) const {
    static const std::map<std::string, std::string> files = {
        {"histograms", "histograms.c2fh"},
        {"codebook", "codebook.c2fc"},
        {"embedding", "embedding.c2fe"},
        {"index", "index.c2fi"},
        {"descriptors", "descriptors.c2fd"}};
    return (fs::path(dir) / files.at(name)).string();
  }
};

void save_manifest(const Manifest& m) {
  json j{{"version", kConfigVersion},
         {"fingerprint", m.fingerprint},
         {"config", config_to_json(m.config)},
         {"n_images", m.n_images},
         {"images", m.images_path},
         {"descriptors", m.descriptors_path},
         {"digests", m.digests}};
  const std::string text = j.dump(2) + "\n";
  std::ofstream out(fs::path(m.dir) / "manifest.json",
                    std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write manifest in " + m.dir);
  out << text;
}

Manifest load_manifest(const std::string& dir) {
  const std::string path = (fs::path(dir) / "manifest.json").string();
  const auto bytes = io::read_file(path);
  json j = json::parse(bytes.begin(), bytes.end());
  Manifest m;
  m.dir = dir;
  m.fingerprint = j.at("fingerprint").get<std::string>();
  m.config = config_from_json(j.at("config"), PipelineConfig{});
  m.n_images = j.at("n_images").get<uint32_t>();
  m.images_path = j.at("images").get<std::string>();
  m.descriptors_path = j.at("descriptors").get<std::string>();
  for (const auto& [key, value] : j.at("digests").items())
    m.digests[key] = value.get<std::string>();
  return m;
}

void verify_store(const Manifest& m, const std::string& name) {
  auto it = m.digests.find(name);
  if (it == m.digests.end())
    throw ConfigError("store '" + name + "' not built yet; run the " +
                      (name == "histograms" ? "extract" : "build") +
                      " command first");
  const std::string actual = file_digest(m.store_path(name));
  if (actual != it->second)
    throw ConfigError("corpus fingerprint mismatch for store '" + name +
                      "': file digest " + actual + " != manifest " +
                      it->second);
}

std::vector<std::string> resolve_image_paths(const std::string& list_path) {
  const auto lines = io::read_lines(list_path);
  const fs::path base = fs::path(list_path).parent_path();
  std::vector<std::string> out;
  out.reserve(lines.size());
  for (const auto& line : lines) {
    fs::path p(line);
    out.push_back(p.is_absolute() ? p.string() : (base / p).string());
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write report file: " + out_path);
    out << text;
  }
}

Protocol parse_protocol(const std::string& name) {
  if (name == "holidays-like") return Protocol::holidays_like;
  if (name == "ukbench-like") return Protocol::ukbench_like;
  throw ConfigError("unknown protocol '" + name +
                    "', expected holidays-like or ukbench-like");
}

RetrievalStores load_stores(const Manifest& m) {
  for (const char* name : {"histograms", "descriptors", "codebook",
                           "embedding", "index"})
    verify_store(m, name);
  RetrievalStores stores;
  stores.histograms =
      io::read_histograms(m.store_path("histograms"), m.config.hsv_dims);
  stores.codebook = io::read_codebook(m.store_path("codebook"));
  stores.he = io::read_he(m.store_path("embedding"));
  stores.index = io::read_index(m.store_path("index"));
  return stores;
}

// ---------------------------------------------------------------- commands

struct SynthArgs {
  std::string out_dir;
  SynthSpec spec;
  std::string protocol = "ukbench-like";
  int image_size = 24;
};

int cmd_synth(const SynthArgs& a) {
  SynthSpec spec = a.spec;
  spec.protocol = parse_protocol(a.protocol);
  spec.image_width = a.image_size;
  spec.image_height = a.image_size;
  const SynthCorpus corpus = generate(spec);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir / "images");
  std::vector<std::string> names;
  char buf[32];
  for (size_t i = 0; i < corpus.images.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "images/%06zu.ppm", i);
    names.emplace_back(buf);
    save_ppm_file((dir / names.back()).string(), corpus.images[i]);
  }
  io::write_lines((dir / "images.txt").string(), names);
  io::write_descriptors((dir / "descriptors.c2fd").string(),
                        corpus.descriptors);
  io::write_ground_truth((dir / "groundtruth.txt").string(),
                         corpus.ground_truth);
  std::cout << "synthesized " << corpus.images.size() << " images, "
            << corpus.descriptors.size() << " descriptors into " << a.out_dir
            << "\n";
  return 0;
}

struct ExtractArgs {
  std::string image_list;
  std::string descriptors;
  std::string store_dir;
  std::string config_path;
  std::optional<uint64_t> seed;
};

int cmd_extract(const ExtractArgs& a) {
  PipelineConfig cfg;
  if (!a.config_path.empty()) cfg = load_config_file(a.config_path, cfg);
  if (a.seed) cfg.seed = *a.seed;

  const auto paths = resolve_image_paths(a.image_list);
  if (paths.empty()) throw ConfigError("image list is empty");

  std::vector<HsvHistogram> histograms;
  histograms.reserve(paths.size());
  std::vector<std::string> failures;
  for (const auto& p : paths) {
    try {
      histograms.push_back(
          normalize_histogram(hsv_histogram(load_ppm_file(p), cfg.hsv_dims),
                              cfg.alpha));
    } catch (const Error& e) {
      failures.push_back(p + ": " + e.what());
    }
  }
  if (!failures.empty()) {
    for (const auto& f : failures) std::cerr << "error: " << f << "\n";
    std::cerr << failures.size() << " of " << paths.size()
              << " images failed to extract\n";
    return 1;
  }

  const DescriptorSet descriptors = io::read_descriptors(a.descriptors);
  for (uint32_t id : descriptors.image_ids)
    if (id >= histograms.size())
      throw ConfigError("descriptor image id " + std::to_string(id) +
                        " exceeds the image count " +
                        std::to_string(histograms.size()));

  fs::create_directories(a.store_dir);
  Manifest m;
  m.dir = a.store_dir;
  m.config = cfg;
  m.n_images = static_cast<uint32_t>(histograms.size());
  m.images_path = a.image_list;
  m.descriptors_path = a.descriptors;
  io::write_histograms(m.store_path("histograms"), histograms);
  fs::copy_file(a.descriptors, m.store_path("descriptors"),
                fs::copy_options::overwrite_existing);
  m.fingerprint = corpus_fingerprint(a.image_list, a.descriptors, cfg);
  m.digests["histograms"] = file_digest(m.store_path("histograms"));
  m.digests["descriptors"] = file_digest(m.store_path("descriptors"));
  save_manifest(m);
  std::cout << "extracted " << histograms.size() << " histograms ("
            << cfg.hsv_dims.product() << " bins), fingerprint "
            << m.fingerprint << "\n";
  return 0;
}

struct BuildArgs {
  std::string store_dir;
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<uint32_t> codebook_size;
  std::optional<int> signature_bits;
  std::optional<int> hamming_threshold;
  std::optional<double> sigma;
  std::optional<int> kmeans_iterations;
};

int cmd_build(const BuildArgs& a) {
  Manifest m = load_manifest(a.store_dir);
  verify_store(m, "histograms");
  verify_store(m, "descriptors");
  if (!a.config_path.empty()) m.config = load_config_file(a.config_path, m.config);
  if (a.seed) m.config.seed = *a.seed;
  if (a.codebook_size) m.config.vocab_size = *a.codebook_size;
  if (a.signature_bits) m.config.signature_bits = *a.signature_bits;
  if (a.hamming_threshold) m.config.hamming_threshold = *a.hamming_threshold;
  if (a.sigma) m.config.sigma = *a.sigma;
  if (a.kmeans_iterations) m.config.kmeans_iterations = *a.kmeans_iterations;

  const DescriptorSet raw = io::read_descriptors(m.store_path("descriptors"));
  const DescriptorSet prepped = root_preprocess(raw);
  const Codebook cb = train_kmeans(
      prepped, {m.config.vocab_size, m.config.kmeans_iterations,
                mix_seed(m.config.seed, 1)});
  const HeParameters he = train_he(cb, prepped, m.config.signature_bits,
                                   mix_seed(m.config.seed, 2));
  const auto features = quantize_descriptors(raw, cb, he, 1);
  const InvertedIndex idx = build_index(
      features, m.n_images,
      {cb.size(), m.config.signature_bits, m.config.hamming_threshold,
       m.config.sigma, m.config.normalize_scores});

  io::write_codebook(m.store_path("codebook"), cb);
  io::write_he(m.store_path("embedding"), he);
  io::write_index(m.store_path("index"), idx);
  m.digests["codebook"] = file_digest(m.store_path("codebook"));
  m.digests["embedding"] = file_digest(m.store_path("embedding"));
  m.digests["index"] = file_digest(m.store_path("index"));
  save_manifest(m);

  const MemoryReport mem = memory_report(idx);
  std::cout << "built codebook k=" << cb.size() << " ("
            << cb.iterations_run << " iterations), index with "
            << idx.posting_count() << " postings, " << mem.total()
            << " bytes on disk layout\n";
  if (!idx.featureless_images.empty())
    std::cerr << "warning: " << idx.featureless_images.size()
              << " images have no local features\n";
  return 0;
}

struct QueryArgs {
  std::string store_dir;
  std::optional<uint32_t> id;
  std::string image_path;
  std::string image_descriptors;
  std::string out_path;
  std::string config_path;
  std::optional<int> k;
  std::optional<int> ma;
  bool no_weights = false;
  bool no_norm = false;
};

PipelineConfig query_config(const Manifest& m, const std::string& config_path,
                            std::optional<int> k, std::optional<int> ma,
                            bool no_weights, bool no_norm) {
  PipelineConfig cfg = m.config;
  if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
  if (k) cfg.candidates = *k;
  if (ma) cfg.multi_assign = *ma;
  if (no_weights) cfg.weights_enabled = false;
  if (no_norm) cfg.normalize_scores = false;
  return cfg;
}

int cmd_query(const QueryArgs& a) {
  const Manifest m = load_manifest(a.store_dir);
  const RetrievalStores stores = load_stores(m);
  const PipelineConfig cfg = query_config(m, a.config_path, a.k, a.ma,
                                          a.no_weights, a.no_norm);

  QueryInput q;
  if (a.id) {
    const DescriptorSet raw =
        io::read_descriptors(m.store_path("descriptors"));
    q = query_from_corpus(stores, raw, *a.id);
  } else {
    q.query_id = 0;
    q.histogram = normalize_histogram(
        hsv_histogram(load_ppm_file(a.image_path), cfg.hsv_dims), cfg.alpha);
    if (a.image_descriptors.empty())
      throw ConfigError("--image queries need --image-descriptors");
    q.descriptors = io::read_descriptors(a.image_descriptors);
    for (auto& id : q.descriptors.image_ids) id = 0;
  }

  const RankList list = run_query(q, stores, cfg);
  emit(format_rank_report(list), a.out_path);
  return 0;
}

struct EvalArgs {
  std::string store_dir;
  std::string ground_truth;
  std::string protocol = "holidays-like";
  std::string out_path;
  std::string config_path;
  std::optional<int> k;
  std::optional<int> ma;
  bool no_weights = false;
  bool no_norm = false;
  bool holistic_only = false;
};

int cmd_eval(const EvalArgs& a) {
  const Manifest m = load_manifest(a.store_dir);
  const RetrievalStores stores = load_stores(m);
  const GroundTruth gt =
      io::read_ground_truth(a.ground_truth, parse_protocol(a.protocol));
  const auto query_ids = query_ids_of(gt);
  for (uint32_t id : query_ids)
    if (id >= stores.image_count())
      throw ConfigError("ground-truth query " + std::to_string(id) +
                        " is not in the corpus");

  std::ostringstream report;
  if (a.holistic_only) {
    const auto rankings = holistic_rankings(stores, query_ids);
    report << "protocol " << a.protocol << " queries " << query_ids.size()
           << " mode holistic-only\n";
    report << "mAP " << mean_ap(rankings, gt) << "\n";
    if (gt.protocol == Protocol::ukbench_like)
      report << "N-S " << ns_score(rankings, gt) << "\n";
  } else {
    const DescriptorSet raw =
        io::read_descriptors(m.store_path("descriptors"));
    const PipelineConfig cfg = query_config(m, a.config_path, a.k, a.ma,
                                            a.no_weights, a.no_norm);
    const BatchResult batch = run_batch(stores, raw, query_ids, cfg);
    report << "protocol " << a.protocol << " queries " << query_ids.size()
           << " K " << cfg.candidates
           << " weights " << (cfg.weights_enabled ? "on" : "off") << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "mAP %.6f\n", mean_ap(batch.rankings, gt));
    report << buf;
    if (gt.protocol == Protocol::ukbench_like) {
      std::snprintf(buf, sizeof(buf), "N-S %.6f\n", ns_score(batch.rankings, gt));
      report << buf;
    }
    std::snprintf(buf, sizeof(buf), "mean_comparisons %.1f\n",
                  batch.mean_comparisons);
    report << buf;
  }
  emit(report.str(), a.out_path);
  return 0;
}

struct SweepArgs {
  std::string store_dir;
  std::string ground_truth;
  std::string protocol = "holidays-like";
  std::string k_list = "1,2,4,8";
  std::string weights = "both";
  std::string jsonl_path;
  std::string out_path;
  std::string config_path;
  // synthetic mode
  bool synthetic = false;
  SynthSpec spec;
  std::string distractor_list;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ConfigError(std::string("bad ") + what + " entry '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError(std::string("empty ") + what);
  return out;
}

WeightSetting parse_weights(const std::string& text) {
  if (text == "on") return WeightSetting::on;
  if (text == "off") return WeightSetting::off;
  if (text == "both") return WeightSetting::both;
  throw ConfigError("weights must be on, off or both");
}

int cmd_sweep(const SweepArgs& a) {
  const auto k_values = parse_int_list(a.k_list, "K list");
  const WeightSetting weights = parse_weights(a.weights);
  std::vector<SweepRow> rows;
  if (a.synthetic) {
    SynthSpec spec = a.spec;
    spec.protocol = parse_protocol(a.protocol);
    PipelineConfig cfg;
    if (!a.config_path.empty()) cfg = load_config_file(a.config_path, cfg);
    const auto distractors =
        a.distractor_list.empty()
            ? std::vector<int>{spec.n_distractors}
            : parse_int_list(a.distractor_list, "distractor list");
    rows = sweep_synthetic(spec, distractors, k_values, weights, cfg);
  } else {
    const Manifest m = load_manifest(a.store_dir);
    const RetrievalStores stores = load_stores(m);
    const DescriptorSet raw =
        io::read_descriptors(m.store_path("descriptors"));
    const GroundTruth gt =
        io::read_ground_truth(a.ground_truth, parse_protocol(a.protocol));
    PipelineConfig cfg = m.config;
    if (!a.config_path.empty()) cfg = load_config_file(a.config_path, cfg);
    rows = sweep_stores(stores, raw, gt, k_values, weights, cfg);
  }
  emit(format_sweep_table(rows), a.out_path);
  if (!a.jsonl_path.empty()) {
    const std::string text = sweep_jsonl(rows);
    io::write_file(a.jsonl_path,
                   {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
  }
  return 0;
}

int cmd_inspect(const std::string& store_dir) {
  const Manifest m = load_manifest(store_dir);
  std::cout << "fingerprint " << m.fingerprint << "\n"
            << "images " << m.n_images << "\n"
            << "config " << config_to_json(m.config).dump() << "\n";
  for (const auto& [name, digest] : m.digests) {
    std::cout << name << " " << digest;
    try {
      verify_store(m, name);
      std::cout << " ok\n";
    } catch (const Error& e) {
      std::cout << " MISMATCH\n";
    }
  }
  if (m.digests.contains("index")) {
    const InvertedIndex idx = io::read_index(m.store_path("index"));
    const MemoryReport mem = memory_report(idx);
    std::cout << "index postings " << idx.posting_count() << "\n"
              << "posting_bytes " << mem.posting_bytes << "\n"
              << "idf_bytes " << mem.idf_bytes << "\n"
              << "norm_bytes " << mem.norm_bytes << "\n"
              << "total_bytes " << mem.total() << "\n"
              << "featureless_images " << idx.featureless_images.size()
              << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"coarse-to-fine image retrieval engine"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "generate a synthetic corpus");
  s->add_option("--out", synth.out_dir, "output directory")->required();
  s->add_option("--groups", synth.spec.n_groups, "number of planted groups");
  s->add_option("--group-size", synth.spec.group_size, "images per group");
  s->add_option("--distractors", synth.spec.n_distractors, "distractor images");
  s->add_option("--seed", synth.spec.seed, "corpus seed");
  s->add_option("--color-separation", synth.spec.color_separation,
                "own-palette pixel fraction in [0,1]");
  s->add_option("--descriptor-noise", synth.spec.descriptor_noise,
                "off-cluster descriptor fraction in [0,1]");
  s->add_option("--protocol", synth.protocol,
                "ground-truth protocol (holidays-like | ukbench-like)");
  s->add_option("--descriptor-dim", synth.spec.descriptor_dim);
  s->add_option("--descriptors-per-image", synth.spec.descriptors_per_image);
  s->add_option("--clusters-per-group", synth.spec.clusters_per_group);
  s->add_option("--distractor-clusters", synth.spec.distractor_clusters);
  s->add_option("--image-size", synth.image_size, "square image side");

  ExtractArgs extract;
  auto* e = app.add_subcommand("extract", "compute histogram store");
  e->add_option("--images", extract.image_list, "image list file")->required();
  e->add_option("--descriptors", extract.descriptors, "descriptor store file")
      ->required();
  e->add_option("--out", extract.store_dir, "store directory")->required();
  e->add_option("--config", extract.config_path, "config JSON");
  uint64_t extract_seed = 0;
  auto* eseed = e->add_option("--seed", extract_seed, "override config seed");

  BuildArgs build;
  auto* b = app.add_subcommand("build", "train codebook, embedding, index");
  b->add_option("--store", build.store_dir, "store directory")->required();
  b->add_option("--config", build.config_path, "config JSON");
  uint64_t build_seed = 0;
  auto* bseed = b->add_option("--seed", build_seed);
  uint32_t build_k = 0;
  auto* bk = b->add_option("--codebook-size", build_k);
  int build_bits = 0;
  auto* bbits = b->add_option("--signature-bits", build_bits);
  int build_ht = 0;
  auto* bht = b->add_option("--hamming-threshold", build_ht);
  double build_sigma = 0;
  auto* bsig = b->add_option("--sigma", build_sigma);
  int build_iters = 0;
  auto* bit = b->add_option("--kmeans-iterations", build_iters);

  QueryArgs query;
  auto* q = app.add_subcommand("query", "rank the database for one query");
  q->add_option("--store", query.store_dir, "store directory")->required();
  uint32_t query_id = 0;
  auto* qid = q->add_option("--id", query_id, "query image id");
  q->add_option("--image", query.image_path, "external query PPM");
  q->add_option("--image-descriptors", query.image_descriptors,
                "descriptor store for the external query");
  q->add_option("--out", query.out_path, "also write the report here");
  q->add_option("--config", query.config_path, "config JSON");
  int query_k = 0;
  auto* qk = q->add_option("--k", query_k, "candidate count K");
  int query_ma = 0;
  auto* qma = q->add_option("--ma", query_ma, "multiple assignment");
  q->add_flag("--no-weights", query.no_weights, "uniform candidate weights");
  q->add_flag("--no-norm", query.no_norm, "disable idf-norm normalization");

  EvalArgs eval;
  auto* ev = app.add_subcommand("eval", "evaluate retrieval metrics");
  ev->add_option("--store", eval.store_dir, "store directory")->required();
  ev->add_option("--ground-truth", eval.ground_truth, "ground-truth file")
      ->required();
  ev->add_option("--protocol", eval.protocol,
                 "holidays-like | ukbench-like")->required();
  ev->add_option("--out", eval.out_path, "also write the report here");
  ev->add_option("--config", eval.config_path, "config JSON");
  int eval_k = 0;
  auto* evk = ev->add_option("--k", eval_k, "candidate count K");
  int eval_ma = 0;
  auto* evma = ev->add_option("--ma", eval_ma);
  ev->add_flag("--no-weights", eval.no_weights);
  ev->add_flag("--no-norm", eval.no_norm);
  ev->add_flag("--holistic-only", eval.holistic_only,
               "evaluate the coarse layer alone");

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "ablation sweeps over K / weights");
  sw->add_option("--store", sweep.store_dir, "store directory");
  sw->add_option("--ground-truth", sweep.ground_truth, "ground-truth file");
  sw->add_option("--protocol", sweep.protocol, "holidays-like | ukbench-like")
      ->required();
  sw->add_option("--k-list", sweep.k_list, "comma-separated K values (0 = holistic only)");
  sw->add_option("--weights", sweep.weights, "on | off | both");
  sw->add_option("--jsonl", sweep.jsonl_path, "machine-readable output file");
  sw->add_option("--out", sweep.out_path, "also write the table here");
  sw->add_option("--config", sweep.config_path, "config JSON");
  sw->add_flag("--synthetic", sweep.synthetic,
               "sweep a synthetic corpus built in memory");
  sw->add_option("--groups", sweep.spec.n_groups);
  sw->add_option("--group-size", sweep.spec.group_size);
  sw->add_option("--seed", sweep.spec.seed);
  sw->add_option("--color-separation", sweep.spec.color_separation);
  sw->add_option("--descriptor-noise", sweep.spec.descriptor_noise);
  sw->add_option("--descriptor-dim", sweep.spec.descriptor_dim);
  sw->add_option("--descriptors-per-image", sweep.spec.descriptors_per_image);
  sw->add_option("--clusters-per-group", sweep.spec.clusters_per_group);
  sw->add_option("--distractor-clusters", sweep.spec.distractor_clusters);
  sw->add_option("--distractor-list", sweep.distractor_list,
                 "comma-separated distractor counts (synthetic mode)");

  std::string inspect_dir;
  auto* in = app.add_subcommand("inspect", "show store stats and memory use");
  in->add_option("--store", inspect_dir, "store directory")->required();

  // CLI11 wants argv-style reversed input when parsing a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (s->parsed()) return cmd_synth(synth);
    if (e->parsed()) {
      if (eseed->count()) extract.seed = extract_seed;
      return cmd_extract(extract);
    }
    if (b->parsed()) {
      if (bseed->count()) build.seed = build_seed;
      if (bk->count()) build.codebook_size = build_k;
      if (bbits->count()) build.signature_bits = build_bits;
      if (bht->count()) build.hamming_threshold = build_ht;
      if (bsig->count()) build.sigma = build_sigma;
      if (bit->count()) build.kmeans_iterations = build_iters;
      return cmd_build(build);
    }
    if (q->parsed()) {
      if (qid->count()) query.id = query_id;
      if (qk->count()) query.k = query_k;
      if (qma->count()) query.ma = query_ma;
      if (!query.id && query.image_path.empty())
        throw ConfigError("query needs --id or --image");
      return cmd_query(query);
    }
    if (ev->parsed()) {
      if (evk->count()) eval.k = eval_k;
      if (evma->count()) eval.ma = eval_ma;
      return cmd_eval(eval);
    }
    if (sw->parsed()) {
      if (!sweep.synthetic &&
          (sweep.store_dir.empty() || sweep.ground_truth.empty()))
        throw ConfigError("sweep needs --store and --ground-truth, or --synthetic");
      return cmd_sweep(sweep);
    }
    if (in->parsed()) return cmd_inspect(inspect_dir);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace c2f::cli
