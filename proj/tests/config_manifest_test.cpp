#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "gpsp/config.hpp"
#include "gpsp/error.hpp"
#include "gpsp/manifest.hpp"
#include "support.hpp"

namespace gpsp {
namespace {

TEST(Config, DefaultsFollowBackend) {
  PipelineConfig cfg;
  EXPECT_EQ(cfg.effective_train().dim, 128u);
  cfg.backend = Backend::Line;
  EXPECT_EQ(cfg.effective_train().dim, 256u);
  cfg.set("dim", "64");
  EXPECT_EQ(cfg.effective_train().dim, 64u);
  EXPECT_EQ(cfg.train.walk_length, 40u);
  EXPECT_EQ(cfg.train.negatives, 5u);
  EXPECT_EQ(cfg.train.walks_per_node, 10u);
}

TEST(Config, ReadsSectionedFile) {
  std::istringstream in(
      "[pipeline]\nbackend = line\nseed = 9\n"
      "[train]\nwalk_length = 20\nline_order = 2\n"
      "[eval]\nfractions = 0.2, 0.8\n"
      "[projection]\nmissing_neighbor = fail\n");
  const auto cfg = read_config(in);
  EXPECT_EQ(cfg.backend, Backend::Line);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.train.walk_length, 20u);
  EXPECT_EQ(cfg.train.line_order, LineOrder::Second);
  EXPECT_EQ(cfg.eval.fractions, (std::vector<double>{0.2, 0.8}));
  EXPECT_EQ(cfg.projection.missing, MissingNeighborPolicy::Fail);
}

TEST(Config, RejectsUnknownAndMisplacedKeys) {
  std::istringstream unknown("[train]\nflux = 3\n");
  EXPECT_THROW(read_config(unknown), InvalidArgument);
  std::istringstream misplaced("[eval]\nwalk_length = 3\n");
  EXPECT_THROW(read_config(misplaced), InvalidArgument);
  std::istringstream bad_value("[train]\nwalk_length = -3\n");
  EXPECT_THROW(read_config(bad_value), InvalidArgument);
  PipelineConfig cfg;
  EXPECT_THROW(cfg.set("backend", "node2vec"), InvalidArgument);
}

TEST(Config, KeysAreUnique) {
  std::set<std::string_view> names;
  for (const auto& k : config_keys()) EXPECT_TRUE(names.insert(k.name).second) << k.name;
  for (const char* required : {"seed", "threads", "out_dir", "backend"}) {
    EXPECT_TRUE(names.contains(required)) << required;
  }
}

TEST(Config, WriteThenReadIsStable) {
  PipelineConfig cfg;
  cfg.set("backend", "line");
  cfg.set("p_intra", "0.07");
  cfg.set("l2_normalize", "true");
  std::ostringstream out;
  write_config(cfg, out);
  std::istringstream in(out.str());
  const auto back = read_config(in);
  EXPECT_EQ(back.resolved(), cfg.resolved());
}

TEST(Config, ValidationChecksPaths) {
  PipelineConfig cfg;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  const test::TempDir dir("cfg");
  std::ofstream(dir / "n.tsv") << "a\tx\n";
  std::ofstream(dir / "e.tsv") << "";
  cfg.nodes = dir / "n.tsv";
  cfg.edges = dir / "e.tsv";
  EXPECT_NO_THROW(cfg.validate(false));
  EXPECT_THROW(cfg.validate(true), InvalidArgument);
}

TEST(Manifest, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Manifest, SaveLoadAndFreshness) {
  const test::TempDir dir("manifest");
  std::ofstream(dir / "out.txt") << "payload";
  Manifest m;
  m.record({"embed:x", "h1", {{"out.txt", sha256_file(dir / "out.txt")}}});
  m.save(dir / "manifest.txt");
  const auto back = Manifest::load(dir / "manifest.txt");
  ASSERT_NE(back.find("embed:x"), nullptr);
  EXPECT_TRUE(back.up_to_date("embed:x", "h1", dir.path()));
  EXPECT_FALSE(back.up_to_date("embed:x", "h2", dir.path()));
  EXPECT_FALSE(back.up_to_date("other", "h1", dir.path()));
  std::ofstream(dir / "out.txt") << "tampered";
  EXPECT_FALSE(back.up_to_date("embed:x", "h1", dir.path()));
  EXPECT_TRUE(Manifest::load(dir / "missing.txt").stages().empty());
}

}  // namespace
}  // namespace gpsp
