#include <gtest/gtest.h>

#include <cmath>

#include "gpsp/error.hpp"
#include "gpsp/line.hpp"
#include "gpsp/partition.hpp"
#include "gpsp/skipgram.hpp"
#include "gpsp/walks.hpp"
#include "support.hpp"

namespace gpsp {
namespace {

// Two disconnected 5-cliques, node ids c0..c4 and d0..d4.
HeterogeneousGraph two_cliques() {
  std::string nodes, edges;
  for (const char side : {'c', 'd'}) {
    for (int i = 0; i < 5; ++i) {
      nodes += std::string(1, side) + std::to_string(i) + "\tx\n";
      for (int j = i + 1; j < 5; ++j) {
        edges += std::string(1, side) + std::to_string(i) + "\t" + std::string(1, side) +
                 std::to_string(j) + "\tlink\n";
      }
    }
  }
  return test::graph_from(nodes, edges);
}

struct Separation {
  double intra = 0.0;
  double inter = 0.0;
};

Separation separation(const EmbeddingMatrix& m) {
  Separation s;
  int n_intra = 0, n_inter = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double c = cosine(m.row(i), m.row(j));
      if (m.id(i)[0] == m.id(j)[0]) {
        s.intra += c;
        ++n_intra;
      } else {
        s.inter += c;
        ++n_inter;
      }
    }
  }
  s.intra /= n_intra;
  s.inter /= n_inter;
  return s;
}

TEST(SkipGram, CliquesSeparate) {
  const auto graph = two_cliques();
  const auto cells = partition(graph);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TrainConfig cfg;
    cfg.dim = 16;
    cfg.seed = seed;
    const auto r = train_deepwalk(cells[0], cfg);
    ASSERT_EQ(r.embeddings.size(), 10u);
    const auto s = separation(r.embeddings);
    EXPECT_GT(s.intra, s.inter) << "seed " << seed;
    EXPECT_LT(r.epoch_losses.back(), r.epoch_losses.front());
    EXPECT_TRUE(r.embeddings.finite());
  }
}

TEST(SkipGram, DegenerateSingleNodeCorpus) {
  WalkCorpus corpus;
  corpus.node_ids = {"a"};
  corpus.source_subnetwork = "x-x";
  std::vector<std::uint32_t> walk(40, 0);
  corpus.add_walk(walk);
  TrainConfig cfg;
  cfg.dim = 8;
  const auto r = train_skipgram(corpus, cfg);
  ASSERT_EQ(r.embeddings.size(), 1u);
  EXPECT_TRUE(r.embeddings.finite());
}

TEST(SkipGram, NodesAbsentFromCorpusEmitNoVector) {
  WalkCorpus corpus;
  corpus.node_ids = {"a", "b", "ghost"};
  corpus.add_walk(std::vector<std::uint32_t>{0, 1, 0, 1});
  TrainConfig cfg;
  cfg.dim = 4;
  const auto r = train_skipgram(corpus, cfg);
  EXPECT_EQ(r.embeddings.ids(), (std::vector<std::string>{"a", "b"}));
}

TEST(SkipGram, EmptyCorpusIsRejected) {
  WalkCorpus corpus;
  EXPECT_THROW(train_skipgram(corpus, TrainConfig{}), InvalidArgument);
}

TEST(SkipGram, DeterministicSingleThreaded) {
  const auto graph_cells = test::random_typed_graph(3, 40, 120, 1);
  const auto cells = partition(graph_cells);
  TrainConfig cfg;
  cfg.dim = 12;
  cfg.seed = 17;
  const auto a = train_deepwalk(cells[0], cfg);
  const auto b = train_deepwalk(cells[0], cfg);
  EXPECT_EQ(a.embeddings, b.embeddings);
  EXPECT_EQ(a.epoch_losses, b.epoch_losses);
  cfg.seed = 18;
  EXPECT_FALSE(train_deepwalk(cells[0], cfg).embeddings == a.embeddings);
}

TEST(SkipGram, MultiThreadedStaysFinite) {
  const auto graph = two_cliques();
  const auto cells = partition(graph);
  TrainConfig cfg;
  cfg.dim = 16;
  cfg.threads = 4;
  const auto r = train_deepwalk(cells[0], cfg);
  EXPECT_TRUE(r.embeddings.finite());
  const auto s = separation(r.embeddings);
  EXPECT_GT(s.intra, s.inter);
}

TEST(Line, SecondOrderCliquesSeparate) {
  const auto graph = two_cliques();
  const auto cells = partition(graph);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TrainConfig cfg;
    cfg.dim = 32;
    cfg.line_order = LineOrder::Second;
    cfg.seed = seed;
    cfg.line_samples_per_edge = 1000;
    const auto r = train_line(cells[0], cfg);
    const auto s = separation(r.embeddings);
    EXPECT_GT(s.intra, s.inter) << "seed " << seed;
    EXPECT_LT(r.epoch_losses.back(), r.epoch_losses.front());
  }
}

TEST(Line, FirstOrderAlignsSingleEdge) {
  const auto graph_cells = test::graph_from("a\tx\nb\tx\n", "a\tb\tlink\n");
  const auto cells = partition(graph_cells);
  TrainConfig cfg;
  cfg.dim = 8;
  cfg.line_order = LineOrder::First;
  cfg.line_samples_per_edge = 20000;
  cfg.learning_rate = 0.05;
  const auto r = train_line(cells[0], cfg);
  const double score = dot(r.embeddings.vector("a"), r.embeddings.vector("b"));
  EXPECT_GT(1.0 / (1.0 + std::exp(-score)), 0.9);
}

TEST(Line, ConcatenatedOrdersHalveTheDimension) {
  const auto graph = two_cliques();
  const auto cells = partition(graph);
  TrainConfig cfg;
  cfg.dim = 256;
  cfg.line_samples_per_edge = 10;
  const auto r = train_line(cells[0], cfg);
  EXPECT_EQ(r.embeddings.dim(), 256u);
  EXPECT_EQ(r.embeddings.size(), 10u);
  cfg.dim = 7;
  EXPECT_THROW(train_line(cells[0], cfg), InvalidArgument);
}

TEST(Line, Deterministic) {
  const auto graph = two_cliques();
  const auto cells = partition(graph);
  TrainConfig cfg;
  cfg.dim = 16;
  cfg.line_samples_per_edge = 50;
  EXPECT_EQ(train_line(cells[0], cfg).embeddings, train_line(cells[0], cfg).embeddings);
}

TEST(Line, RejectsBipartiteInput) {
  const auto graph_cells = test::aminer_like();
  const auto cells = partition(graph_cells);
  EXPECT_THROW(train_line(subnetwork_of(cells, SubnetworkKey::bipartite("author", "paper")), TrainConfig{}),
               InvalidArgument);
}

TEST(TrainConfig, ValidationAndOrders) {
  TrainConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.walk_length = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  EXPECT_EQ(parse_line_order("1"), LineOrder::First);
  EXPECT_EQ(parse_line_order("2"), LineOrder::Second);
  EXPECT_EQ(parse_line_order("1+2"), LineOrder::Both);
  EXPECT_THROW(parse_line_order("3"), InvalidArgument);
}

}  // namespace
}  // namespace gpsp
