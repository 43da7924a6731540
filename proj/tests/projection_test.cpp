#include <memory>
#include <gtest/gtest.h>

#include <random>

#include "gpsp/error.hpp"
#include "gpsp/partition.hpp"
#include "gpsp/projection.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace gpsp {
namespace {

EmbeddingMatrix targets(std::vector<std::pair<std::string, std::vector<double>>> rows,
                        const std::string& type = "paper") {
  EmbeddingMatrix m(rows.front().second.size(), Provenance::Homogeneous, type + "-" + type, type);
  for (auto& [id, v] : rows) m.add(id, v);
  return m;
}

struct Fixture {
  std::unique_ptr<HeterogeneousGraph> graph;
  std::vector<Subnetwork> cells;
  const Subnetwork& bipartite() const {
    return subnetwork_of(cells, SubnetworkKey::bipartite("author", "paper"));
  }
};

Fixture bip(const std::string& edges, const std::string& nodes = "a\tauthor\nb1\tpaper\nb2\tpaper\n") {
  Fixture f{std::make_unique<HeterogeneousGraph>(test::graph_from(nodes, edges)), {}};
  f.cells = partition(*f.graph);
  return f;
}

TEST(Projection, SingleUnitNeighborIsIdentity) {
  const auto f = bip("a\tb1\twrite\n");
  const auto t = targets({{"b1", {0.3, -0.2}}, {"b2", {9, 9}}});
  const auto m = project({f.bipartite(), "author", "paper", t});
  EXPECT_EQ(m.dim(), 2u);
  EXPECT_EQ(m.provenance(), Provenance::Projective);
  EXPECT_EQ(m.space_label(), "author_to_paper");
  EXPECT_EQ(m.node_type(), "author");
  ASSERT_TRUE(m.contains("a"));
  EXPECT_EQ(m.vector("a")[0], 0.3);
  EXPECT_EQ(m.vector("a")[1], -0.2);
}

TEST(Projection, UnweightedMean) {
  const auto f = bip("a\tb1\twrite\na\tb2\twrite\n");
  const auto m = project({f.bipartite(), "author", "paper", targets({{"b1", {1, 0}}, {"b2", {0, 1}}})});
  EXPECT_DOUBLE_EQ(m.vector("a")[0], 0.5);
  EXPECT_DOUBLE_EQ(m.vector("a")[1], 0.5);
}

TEST(Projection, WeightedDividesByCount) {
  const auto f = bip("a\tb1\twrite\t1\na\tb2\twrite\t3\n");
  const auto t = targets({{"b1", {2, 0}}, {"b2", {0, 4}}});
  const auto m = project({f.bipartite(), "author", "paper", t});
  EXPECT_DOUBLE_EQ(m.vector("a")[0], 1.0);
  EXPECT_DOUBLE_EQ(m.vector("a")[1], 6.0);

  const auto w = project({f.bipartite(), "author", "paper", t, {MissingNeighborPolicy::Fail, true}});
  EXPECT_DOUBLE_EQ(w.vector("a")[0], 0.5);
  EXPECT_DOUBLE_EQ(w.vector("a")[1], 3.0);
}

TEST(Projection, ReverseDirection) {
  const auto f = bip("a\tb1\twrite\n", "a\tauthor\nz\tauthor\nb1\tpaper\n");
  EmbeddingMatrix authors(1, Provenance::Homogeneous, "author-author", "author");
  authors.add("a", std::vector<double>{4.0});
  const auto m = project({f.bipartite(), "paper", "author", authors});
  EXPECT_EQ(m.space_label(), "paper_to_author");
  EXPECT_EQ(m.vector("b1")[0], 4.0);
}

TEST(Projection, SourcesWithoutNeighborsEmitNothing) {
  const auto f = bip("a\tb1\twrite\n", "a\tauthor\nlonely\tauthor\nb1\tpaper\n");
  const auto m = project({f.bipartite(), "author", "paper", targets({{"b1", {1.0}}})});
  EXPECT_EQ(m.size(), 1u);
  EXPECT_FALSE(m.contains("lonely"));
}

TEST(Projection, MissingNeighborPolicies) {
  const auto f = bip("a\tb1\twrite\na\tb2\twrite\t5\n");
  const auto t = targets({{"b1", {2.0, 2.0}}});
  EXPECT_THROW(project({f.bipartite(), "author", "paper", t}), NotFoundError);
  const auto m = project({f.bipartite(), "author", "paper", t, {MissingNeighborPolicy::Skip, false}});
  EXPECT_DOUBLE_EQ(m.vector("a")[0], 2.0);
}

TEST(Projection, RejectsMismatchedInputs) {
  const auto f = bip("a\tb1\twrite\n");
  const auto t = targets({{"b1", {1.0}}});
  EXPECT_THROW(project({f.bipartite(), "author", "venue", t}), InvalidArgument);
  auto wrong = t;
  wrong.set_space_label("author-author");
  EXPECT_THROW(project({f.bipartite(), "author", "paper", wrong}), InvalidArgument);
  const auto graph_homog = test::aminer_like();
  const auto homog = partition(graph_homog);
  EXPECT_THROW(project({homog[0], "author", "paper", t}), InvalidArgument);
}

TEST(Projection, PolicyNames) {
  EXPECT_EQ(parse_missing_neighbor_policy("skip"), MissingNeighborPolicy::Skip);
  EXPECT_EQ(to_string(MissingNeighborPolicy::Fail), "fail");
  EXPECT_THROW(parse_missing_neighbor_policy("ignore"), InvalidArgument);
}

TEST(ProjectionProperties, MatchesNaiveDoubleLoop) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rc = test::random_bipartite_case(seed);
    const auto cells = partition(rc.graph);
    for (const bool by_weight : {false, true}) {
      const auto m = project({cells.at(0), "A", "B", rc.target, {MissingNeighborPolicy::Fail, by_weight}});
      const auto expected = oracle::naive_projection(rc.sources, rc.edges, rc.vectors, by_weight);
      ASSERT_EQ(m.size(), expected.size()) << "seed " << seed;
      for (const auto& [a, vec] : expected) {
        const auto got = m.vector("a" + std::to_string(a));
        for (std::size_t d = 0; d < vec.size(); ++d) {
          EXPECT_LE(oracle::relative_error(got[d], vec[d]), 1e-12) << "seed " << seed;
        }
      }
    }
  }
}

TEST(ProjectionProperties, UnitWeightsGiveConvexCombination) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto rc = test::random_bipartite_case(seed, true);
    const auto cells = partition(rc.graph);
    const auto m = project({cells.at(0), "A", "B", rc.target});
    for (std::size_t a = 0; a < rc.sources; ++a) {
      const auto id = "a" + std::to_string(a);
      if (!m.contains(id)) continue;
      const auto got = m.vector(id);
      for (std::size_t d = 0; d < got.size(); ++d) {
        double lo = 1e300, hi = -1e300;
        for (const auto& e : rc.edges) {
          if (e.src != a) continue;
          lo = std::min(lo, rc.vectors[e.dst][d]);
          hi = std::max(hi, rc.vectors[e.dst][d]);
        }
        EXPECT_GE(got[d], lo - 1e-12);
        EXPECT_LE(got[d], hi + 1e-12);
      }
    }
  }
}

TEST(ProjectionProperties, Linearity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto rc = test::random_bipartite_case(seed);
    const auto cells = partition(rc.graph);
    const double c = -2.75;
    const auto base = project({cells.at(0), "A", "B", rc.target});
    const auto scaled_target = rc.target.scaled(c);
    const auto scaled = project({cells.at(0), "A", "B", scaled_target});
    ASSERT_EQ(base.ids(), scaled.ids());
    for (std::size_t i = 0; i < base.data().size(); ++i) {
      EXPECT_LE(oracle::relative_error(scaled.data()[i], c * base.data()[i]), 1e-12);
    }
  }
}

TEST(ProjectionProperties, EdgeOrderDoesNotMatter) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto rc = test::random_bipartite_case(seed);
    std::mt19937_64 gen(seed + 1000);
    std::shuffle(rc.edges.begin(), rc.edges.end(), gen);
    HeterogeneousGraph::Builder b;
    for (const auto& n : rc.graph.nodes()) b.add_node(n.id, n.type);
    for (const auto& e : rc.edges) {
      b.add_edge("a" + std::to_string(e.src), "b" + std::to_string(e.dst), "link", e.weight);
    }
    const auto shuffled = std::move(b).build();
    const auto c1 = partition(rc.graph);
    const auto c2 = partition(shuffled);
    const auto m1 = project({c1.at(0), "A", "B", rc.target});
    const auto m2 = project({c2.at(0), "A", "B", rc.target});
    ASSERT_EQ(m1.ids(), m2.ids());
    for (std::size_t i = 0; i < m1.data().size(); ++i) {
      EXPECT_LE(oracle::relative_error(m1.data()[i], m2.data()[i]), 1e-12);
    }
  }
}

}  // namespace
}  // namespace gpsp
