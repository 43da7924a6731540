#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gpsp/compose.hpp"
#include "gpsp/error.hpp"
#include "gpsp/manifest.hpp"
#include "gpsp/pipeline.hpp"
#include "gpsp/synthgen.hpp"
#include "support.hpp"

namespace gpsp {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A small synthetic network with quick training settings.
PipelineConfig small_config(const test::TempDir& dir, Backend backend = Backend::DeepWalk) {
  SynthConfig s;
  s.authors_per_community = 30;
  s.papers_per_community = 30;
  s.p_intra = 0.2;
  s.p_inter = 0.01;
  s.q_intra = 0.2;
  s.q_inter = 0.01;
  write_synth(generate(s), dir / "data");
  PipelineConfig cfg;
  cfg.nodes = dir / "data" / "nodes.tsv";
  cfg.edges = dir / "data" / "edges.tsv";
  cfg.labels = dir / "data" / "labels.tsv";
  cfg.out_dir = dir / "out";
  cfg.backend = backend;
  cfg.train.epochs = 2;
  cfg.train.walks_per_node = 4;
  cfg.train.walk_length = 20;
  cfg.train.line_samples_per_edge = 10;
  cfg.eval.kmeans_restarts = 2;
  return cfg;
}

TEST(Pipeline, RunProducesReportAndArtifacts) {
  const test::TempDir dir("pipe-run");
  const auto cfg = small_config(dir);
  const auto r = run_pipeline(cfg);
  ASSERT_EQ(r.report.classification.size(), 9u);
  for (const auto& f : r.report.classification) {
    EXPECT_GE(f.f1.micro, 0.0);
    EXPECT_LE(f.f1.micro, 1.0);
  }
  EXPECT_GE(r.report.nmi, 0.0);
  EXPECT_LE(r.report.nmi, 1.0);
  EXPECT_EQ(r.report.method, "GPSP-DeepWalk");

  const auto out = cfg.out_dir;
  for (const char* rel : {"embeddings/deepwalk/author-author.emb", "embeddings/deepwalk/paper-paper.emb",
                          "projections/deepwalk/author_to_paper.proj.emb",
                          "projections/deepwalk/paper_to_author.proj.emb",
                          "final/deepwalk/author.final.emb", "final/deepwalk/author.final.parts",
                          "GPSP-DeepWalk.report.txt", "GPSP-DeepWalk.metrics.kv", "manifest.txt"}) {
    EXPECT_TRUE(fs::exists(out / rel)) << rel;
  }
  const auto parts = load_part_boundaries(out / "final/deepwalk/author.final.parts");
  EXPECT_EQ(parts, (std::vector<PartBoundary>{{"author-author", 0, 128}, {"author_to_paper", 128, 128}}));

  // Every written file is listed in the manifest with its current hash.
  const auto m = Manifest::load(out / "manifest.txt");
  std::size_t listed = 0;
  for (const auto& s : m.stages()) {
    for (const auto& o : s.outputs) {
      EXPECT_EQ(sha256_file(out / o.path), o.sha256) << o.path;
      ++listed;
    }
  }
  std::size_t on_disk = 0;
  for (const auto& e : fs::recursive_directory_iterator(out)) {
    on_disk += e.is_regular_file() && e.path().filename() != "manifest.txt";
  }
  EXPECT_EQ(listed, on_disk);

  const auto report = slurp(r.report_file);
  EXPECT_NE(report.find("[config]"), std::string::npos);
  EXPECT_NE(report.find("pipeline.backend = deepwalk"), std::string::npos);
  EXPECT_NE(report.find("0.3555"), std::string::npos);
}

TEST(Pipeline, ResumeSkipsFinishedStages) {
  const test::TempDir dir("pipe-resume");
  auto cfg = small_config(dir);
  const auto first = run_pipeline(cfg);
  EXPECT_TRUE(first.resumed_stages.empty());
  const auto report = slurp(first.report_file);
  const auto second = run_pipeline(cfg);
  EXPECT_TRUE(second.computed_stages.empty());
  EXPECT_EQ(second.resumed_stages.size(), first.computed_stages.size());
  EXPECT_EQ(second.report.nmi, first.report.nmi);
  EXPECT_EQ(slurp(second.report_file), report);

  // Changing an eval knob recomputes only evaluation.
  cfg.eval.kmeans_restarts = 3;
  const auto third = run_pipeline(cfg);
  EXPECT_EQ(third.computed_stages, (std::vector<std::string>{"eval:GPSP-DeepWalk"}));

  // Baseline reuses the homogeneous embedding of the labeled type.
  const auto base = baseline_run(cfg, Backend::DeepWalk);
  EXPECT_EQ(base.resumed_stages, (std::vector<std::string>{"embed:deepwalk:author-author"}));
  EXPECT_EQ(base.report.method, "DeepWalk");
}

TEST(Pipeline, DeterministicSingleThreaded) {
  const test::TempDir dir("pipe-det");
  auto cfg = small_config(dir);
  cfg.resume = false;
  run_pipeline(cfg);
  const auto report = slurp(cfg.out_dir / "GPSP-DeepWalk.report.txt");
  const auto emb = slurp(cfg.out_dir / "final/deepwalk/author.final.emb");
  run_pipeline(cfg);
  EXPECT_EQ(slurp(cfg.out_dir / "GPSP-DeepWalk.report.txt"), report);
  EXPECT_EQ(slurp(cfg.out_dir / "final/deepwalk/author.final.emb"), emb);
}

TEST(Pipeline, LineBackendDimensions) {
  const test::TempDir dir("pipe-line");
  const auto cfg = small_config(dir, Backend::Line);
  const auto r = run_pipeline(cfg);
  EXPECT_EQ(r.report.method, "GPSP-LINE");
  const auto final_emb = load_embeddings(cfg.out_dir / "final/line/author.final.emb");
  EXPECT_EQ(final_emb.dim(), 512u);
  const auto parts = load_part_boundaries(cfg.out_dir / "final/line/author.final.parts");
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].dim + parts[1].dim, final_emb.dim());
}

TEST(Pipeline, BinaryArtifacts) {
  const test::TempDir dir("pipe-bin");
  auto cfg = small_config(dir);
  cfg.binary = true;
  run_pipeline(cfg);
  const auto raw = slurp(cfg.out_dir / "final/deepwalk/author.final.emb");
  EXPECT_EQ(raw.substr(0, 8), "GPSPEMB1");
  EXPECT_EQ(run_pipeline(cfg).computed_stages.size(), 0u);
}

TEST(Pipeline, BaselineWithoutLabeledSubnetworkNamesIt) {
  const test::TempDir dir("pipe-nohomog");
  std::ofstream(dir / "n.tsv") << "a1\tauthor\na2\tauthor\np1\tpaper\np2\tpaper\n";
  std::ofstream(dir / "e.tsv") << "a1\tp1\twrite\na2\tp2\twrite\np1\tp2\tcite\n";
  std::ofstream(dir / "l.tsv") << "a1\t0\na2\t1\n";
  PipelineConfig cfg;
  cfg.nodes = dir / "n.tsv";
  cfg.edges = dir / "e.tsv";
  cfg.labels = dir / "l.tsv";
  cfg.out_dir = dir / "out";
  try {
    baseline_run(cfg, Backend::DeepWalk);
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_NE(std::string(e.what()).find("author-author"), std::string::npos) << e.what();
  }
}

TEST(Pipeline, StageErrorsCarryTheStageName) {
  const test::TempDir dir("pipe-fail");
  auto cfg = small_config(dir);
  cfg.projection.missing = MissingNeighborPolicy::Fail;
  // An author with a paper but no coauthors has no homogeneous vector.
  std::ofstream(cfg.nodes, std::ios::app) << "author_zz\tauthor\n";
  std::ofstream(cfg.edges, std::ios::app) << "author_zz\tpaper_000\twrite\n";
  try {
    run_pipeline(cfg);
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "project:deepwalk:paper_to_author");
  }
  cfg.nodes = dir / "absent.tsv";
  try {
    run_pipeline(cfg);
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "load");
  }
}

TEST(Pipeline, MetricsRoundTrip) {
  eval::EvaluationReport r;
  r.method = "LINE";
  r.classification = {{0.1, {0.5, 0.25}}, {0.9, {0.75, 0.125}}};
  r.nmi = 0.3;
  r.seed = 4;
  r.clusters = 8;
  r.matched_node_count = 10;
  std::ostringstream out;
  eval::write_metrics(r, out);
  std::istringstream in(out.str());
  const auto back = read_metrics(in);
  EXPECT_EQ(back.method, "LINE");
  ASSERT_EQ(back.classification.size(), 2u);
  EXPECT_EQ(back.classification[1].f1.macro, 0.125);
  EXPECT_EQ(back.nmi, 0.3);
  EXPECT_EQ(back.clusters, 8u);
}

#ifdef GPSP_CLI_PATH
int cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(GPSP_CLI_PATH) + " " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, GenerateRunBaselineAndErrors) {
  const test::TempDir dir("cli");
  const auto d = dir.path().string();
  ASSERT_EQ(cli("generate --seed 3 --authors-per-community 20 --papers-per-community 20 "
                "--p-intra 0.3 --p-inter 0.01 --q-intra 0.3 --q-inter 0.01 --out-dir " + d + "/data",
                dir / "gen.log"),
            0)
      << slurp(dir / "gen.log");
  EXPECT_TRUE(fs::exists(dir / "data/labels.tsv"));

  std::ofstream(dir / "run.ini") << "[train]\nepochs = 1\nwalks_per_node = 2\nwalk_length = 10\n"
                                    "[eval]\nkmeans_restarts = 1\n";
  const std::string inputs = "--nodes " + d + "/data/nodes.tsv --edges " + d + "/data/edges.tsv --labels " +
                             d + "/data/labels.tsv --config " + d + "/run.ini";
  ASSERT_EQ(cli("run " + inputs + " --out-dir " + d + "/out --walk-length 12", dir / "run.log"), 0)
      << slurp(dir / "run.log");
  const auto report = slurp(dir / "out/GPSP-DeepWalk.report.txt");
  EXPECT_NE(report.find("train.walk_length = 12"), std::string::npos);
  EXPECT_NE(report.find("train.epochs = 1"), std::string::npos);

  EXPECT_EQ(cli("baseline " + inputs + " --out-dir " + d + "/out", dir / "base.log"), 0);
  EXPECT_TRUE(fs::exists(dir / "out/DeepWalk.metrics.kv"));

  EXPECT_EQ(cli("partition " + inputs + " --out-dir " + d + "/out", dir / "part.log"), 0);
  EXPECT_NE(slurp(dir / "part.log").find("Bipartite(author,paper)"), std::string::npos);

  // Single-stage subcommands chain into a composed embedding.
  ASSERT_EQ(cli("embed " + inputs + " --node-type paper --dim 8 --out " + d + "/s/paper-paper.emb",
                dir / "embed.log"),
            0)
      << slurp(dir / "embed.log");
  ASSERT_EQ(cli("embed " + inputs + " --node-type author --dim 8 --out " + d + "/s/author-author.emb",
                dir / "embed2.log"),
            0);
  ASSERT_EQ(cli("project " + inputs + " --source author --target paper --target-emb " + d +
                    "/s/paper-paper.emb --out " + d + "/s/author_to_paper.proj.emb",
                dir / "proj.log"),
            0)
      << slurp(dir / "proj.log");
  ASSERT_EQ(cli("compose --node-type author --homogeneous " + d + "/s/author-author.emb --projective " + d +
                    "/s/author_to_paper.proj.emb --out " + d + "/s/author.final.emb",
                dir / "compose.log"),
            0)
      << slurp(dir / "compose.log");
  EXPECT_EQ(load_embeddings(dir / "s/author.final.emb").dim(), 16u);
  ASSERT_EQ(cli("eval " + inputs + " --embeddings " + d + "/s/author.final.emb --method GPSP-DeepWalk --out-dir " +
                    d + "/s",
                dir / "eval.log"),
            0)
      << slurp(dir / "eval.log");
  EXPECT_NE(slurp(dir / "eval.log").find("NMI"), std::string::npos);

  // Failures exit nonzero with a stage tag.
  EXPECT_NE(cli("run --nodes " + d + "/nope.tsv --edges " + d + "/data/edges.tsv --labels " + d +
                    "/data/labels.tsv --out-dir " + d + "/out2",
                dir / "fail.log"),
            0);
  EXPECT_NE(slurp(dir / "fail.log").find("stage 'load'"), std::string::npos) << slurp(dir / "fail.log");
  EXPECT_NE(cli("run " + inputs + " --backend word2vec", dir / "bad.log"), 0);
  EXPECT_NE(cli("frobnicate", dir / "usage.log"), 0);
}
#endif

}  // namespace
}  // namespace gpsp
