#include <chrono>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "c2f/cli.hpp"
#include "c2f/io.hpp"
#include "c2f/rng.hpp"

using namespace c2f;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    const auto tick =
        std::chrono::steady_clock::now().time_since_epoch().count();
    path = fs::temp_directory_path() /
           ("c2f_cli_test_" + std::to_string(Rng(tick).next_u64()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string sub(const std::string& name) const {
    return (path / name).string();
  }
};

int run_cli(std::initializer_list<std::string> args) {
  return cli::run(std::vector<std::string>(args));
}

void make_corpus(const TempDir& dir, const std::string& name,
                 const std::string& protocol = "ukbench-like") {
  REQUIRE(run_cli({"synth", "--out", dir.sub(name), "--groups", "3",
               "--group-size", "4", "--distractors", "6", "--seed", "21",
               "--color-separation", "0.6", "--descriptor-noise", "0.1",
               "--protocol", protocol}) == 0);
}

void extract_and_build(const TempDir& dir, const std::string& corpus,
                       const std::string& store) {
  REQUIRE(run_cli({"extract", "--images", dir.sub(corpus) + "/images.txt",
               "--descriptors", dir.sub(corpus) + "/descriptors.c2fd",
               "--out", dir.sub(store)}) == 0);
  REQUIRE(run_cli({"build", "--store", dir.sub(store), "--codebook-size", "26",
               "--signature-bits", "16", "--hamming-threshold", "6",
               "--sigma", "3.25", "--seed", "3"}) == 0);
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("full synth/extract/build/query/eval/sweep flow succeeds") {
  TempDir dir;
  make_corpus(dir, "corpus");
  extract_and_build(dir, "corpus", "store");

  CHECK(run_cli({"query", "--store", dir.sub("store"), "--id", "0", "--k", "8",
             "--out", dir.sub("report.txt")}) == 0);
  const auto report = io::read_lines(dir.sub("report.txt"));
  CHECK(report.size() == 10);  // header + column comment + 8 entries
  CHECK(report[0].starts_with("query 0"));

  CHECK(run_cli({"eval", "--store", dir.sub("store"), "--ground-truth",
             dir.sub("corpus") + "/groundtruth.txt", "--protocol",
             "ukbench-like", "--k", "8", "--out", dir.sub("eval.txt")}) == 0);
  const auto eval_lines = io::read_lines(dir.sub("eval.txt"));
  REQUIRE(eval_lines.size() >= 3);
  CHECK(eval_lines[1].starts_with("mAP "));
  CHECK(eval_lines[2].starts_with("N-S "));

  CHECK(run_cli({"sweep", "--store", dir.sub("store"), "--ground-truth",
             dir.sub("corpus") + "/groundtruth.txt", "--protocol",
             "ukbench-like", "--k-list", "0,2,4,8", "--weights", "both",
             "--out", dir.sub("sweep.txt"), "--jsonl",
             dir.sub("sweep.jsonl")}) == 0);
  // K=0 gives one row; the other three K values give two rows each.
  CHECK(io::read_lines(dir.sub("sweep.jsonl")).size() == 7);

  CHECK(run_cli({"inspect", "--store", dir.sub("store")}) == 0);
}

TEST_CASE("extract and build are idempotent byte for byte") {
  TempDir dir;
  make_corpus(dir, "corpus");
  extract_and_build(dir, "corpus", "store");
  const auto hist1 = io::read_file(dir.sub("store") + "/histograms.c2fh");
  const auto index1 = io::read_file(dir.sub("store") + "/index.c2fi");
  const auto manifest1 = io::read_file(dir.sub("store") + "/manifest.json");
  extract_and_build(dir, "corpus", "store");
  CHECK(io::read_file(dir.sub("store") + "/histograms.c2fh") == hist1);
  CHECK(io::read_file(dir.sub("store") + "/index.c2fi") == index1);
  CHECK(io::read_file(dir.sub("store") + "/manifest.json") == manifest1);
}

TEST_CASE("unknown query id exits nonzero") {
  TempDir dir;
  make_corpus(dir, "corpus");
  extract_and_build(dir, "corpus", "store");
  CHECK(run_cli({"query", "--store", dir.sub("store"), "--id", "999"}) == 1);
}

TEST_CASE("a corrupt image fails extract with a per-file listing") {
  TempDir dir;
  make_corpus(dir, "corpus");
  {
    std::ofstream bad(dir.sub("corpus") + "/images/000002.ppm",
                      std::ios::binary | std::ios::trunc);
    bad << "not a ppm";
  }
  CHECK(run_cli({"extract", "--images", dir.sub("corpus") + "/images.txt",
             "--descriptors", dir.sub("corpus") + "/descriptors.c2fd",
             "--out", dir.sub("store2")}) == 1);
}

TEST_CASE("build rejects a codebook larger than the corpus") {
  TempDir dir;
  make_corpus(dir, "corpus");
  REQUIRE(run_cli({"extract", "--images", dir.sub("corpus") + "/images.txt",
               "--descriptors", dir.sub("corpus") + "/descriptors.c2fd",
               "--out", dir.sub("store")}) == 0);
  CHECK(run_cli({"build", "--store", dir.sub("store"), "--codebook-size",
             "100000"}) == 1);
}

TEST_CASE("query before build reports the missing store") {
  TempDir dir;
  make_corpus(dir, "corpus");
  REQUIRE(run_cli({"extract", "--images", dir.sub("corpus") + "/images.txt",
               "--descriptors", dir.sub("corpus") + "/descriptors.c2fd",
               "--out", dir.sub("store")}) == 0);
  CHECK(run_cli({"query", "--store", dir.sub("store"), "--id", "0"}) == 1);
}

TEST_CASE("tampered stores are caught by the fingerprint check") {
  TempDir dir;
  make_corpus(dir, "corpus");
  extract_and_build(dir, "corpus", "store");
  auto bytes = io::read_file(dir.sub("store") + "/codebook.c2fc");
  bytes[bytes.size() / 2] ^= 0xFF;
  io::write_file(dir.sub("store") + "/codebook.c2fc", bytes);
  CHECK(run_cli({"query", "--store", dir.sub("store"), "--id", "0"}) == 1);
}

TEST_CASE("ukbench protocol on non-4 groups exits nonzero") {
  TempDir dir;
  REQUIRE(run_cli({"synth", "--out", dir.sub("corpus"), "--groups", "2",
               "--group-size", "3", "--distractors", "2", "--seed", "4",
               "--protocol", "holidays-like"}) == 0);
  extract_and_build(dir, "corpus", "store");
  CHECK(run_cli({"eval", "--store", dir.sub("store"), "--ground-truth",
             dir.sub("corpus") + "/groundtruth.txt", "--protocol",
             "ukbench-like", "--k", "4"}) == 1);
}

TEST_CASE("synthetic sweep runs without a store") {
  TempDir dir;
  CHECK(run_cli({"sweep", "--synthetic", "--groups", "2", "--group-size", "4",
             "--seed", "5", "--color-separation", "0.7",
             "--descriptor-noise", "0.1", "--clusters-per-group", "3",
             "--distractor-clusters", "4", "--descriptors-per-image", "12",
             "--protocol", "ukbench-like", "--k-list", "2,4",
             "--distractor-list", "0,4", "--weights", "on", "--config",
             dir.sub("cfg.json"), "--out", dir.sub("table.txt")}) == 1);
  // the config file does not exist: exit 1 above; now write one and retry
  {
    std::ofstream cfg(dir.sub("cfg.json"));
    cfg << R"({"version":1,"codebook_size":10,"signature_bits":16,)"
        << R"("hamming_threshold":6,"sigma":3.25,"kmeans_iterations":10})";
  }
  CHECK(run_cli({"sweep", "--synthetic", "--groups", "2", "--group-size", "4",
             "--seed", "5", "--color-separation", "0.7",
             "--descriptor-noise", "0.1", "--clusters-per-group", "3",
             "--distractor-clusters", "4", "--descriptors-per-image", "12",
             "--protocol", "ukbench-like", "--k-list", "2,4",
             "--distractor-list", "0,4", "--weights", "on", "--config",
             dir.sub("cfg.json"), "--out", dir.sub("table.txt")}) == 0);
  CHECK(io::read_lines(dir.sub("table.txt")).size() == 1 + 4);
}

TEST_SUITE_END();
