#pragma once

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gpsp/embedding.hpp"
#include "gpsp/graph.hpp"
#include "oracles.hpp"

namespace gpsp::test {

/// Scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 gen(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("gpsp-" + tag + "-" + std::to_string(gen() % 1000000000ULL));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline HeterogeneousGraph graph_from(const std::string& nodes, const std::string& edges) {
  std::istringstream n(nodes);
  std::istringstream e(edges);
  return read_graph(n, e);
}

/// The small author/paper schema of the AMiner dataset.
inline HeterogeneousGraph aminer_like() {
  return graph_from(
      "a1\tauthor\na2\tauthor\na3\tauthor\np1\tpaper\np2\tpaper\np3\tpaper\n",
      "a1\ta2\tcoauthor\n"
      "a2\ta3\tcoauthor\n"
      "a1\tp1\twrite\n"
      "a2\tp1\twrite\n"
      "a3\tp2\twrite\n"
      "p1\tp2\tcite\n"
      "p2\tp3\tcite\n");
}

/// Random typed graph over `types` node types with random edge types between
/// random type pairs. Edge types are declared consistently.
inline HeterogeneousGraph random_typed_graph(std::uint64_t seed, std::size_t nodes = 30,
                                             std::size_t edges = 80, std::size_t types = 3) {
  std::mt19937_64 gen(seed);
  HeterogeneousGraph::Builder b;
  std::vector<std::vector<NodeIndex>> by_type(types);
  for (std::size_t i = 0; i < nodes; ++i) {
    const std::size_t t = gen() % types;
    by_type[t].push_back(b.add_node("n" + std::to_string(i), "t" + std::to_string(t)));
  }
  struct Kind {
    std::size_t a, b;
  };
  std::vector<Kind> kinds;
  const std::size_t kind_count = 2 + gen() % 4;
  for (std::size_t k = 0; k < kind_count; ++k) kinds.push_back({gen() % types, gen() % types});
  std::uniform_real_distribution<double> weight(0.1, 3.0);
  for (std::size_t e = 0; e < edges; ++e) {
    const std::size_t k = gen() % kinds.size();
    const auto& ta = by_type[kinds[k].a];
    const auto& tb = by_type[kinds[k].b];
    if (ta.empty() || tb.empty()) continue;
    b.add_edge(ta[gen() % ta.size()], tb[gen() % tb.size()], "e" + std::to_string(k), weight(gen));
  }
  return std::move(b).build();
}

// Random bipartite instance in both library and oracle form.
struct RandomCase {
  HeterogeneousGraph graph;
  std::vector<oracle::NaiveEdge> edges;
  std::vector<std::vector<double>> vectors;
  std::size_t sources = 0;
  EmbeddingMatrix target;
};

inline RandomCase random_bipartite_case(std::uint64_t seed, bool unit_weights = false) {
  std::mt19937_64 gen(seed);
  RandomCase rc;
  rc.sources = 1 + gen() % 25;
  const std::size_t sinks = 1 + gen() % 25;
  const std::size_t dim = 1 + gen() % 8;
  HeterogeneousGraph::Builder b;
  for (std::size_t i = 0; i < rc.sources; ++i) b.add_node("a" + std::to_string(i), "A");
  for (std::size_t j = 0; j < sinks; ++j) b.add_node("b" + std::to_string(j), "B");
  std::uniform_real_distribution<double> w(0.05, 4.0);
  std::normal_distribution<double> x(0.0, 1.0);
  const double density = 0.05 + 0.5 * static_cast<double>(gen() % 100) / 100.0;
  for (std::size_t i = 0; i < rc.sources; ++i) {
    for (std::size_t j = 0; j < sinks; ++j) {
      if (std::generate_canonical<double, 53>(gen) >= density) continue;
      const double weight = unit_weights ? 1.0 : w(gen);
      b.add_edge("a" + std::to_string(i), "b" + std::to_string(j), "link", weight);
      rc.edges.push_back({i, j, weight});
    }
  }
  if (rc.edges.empty()) {
    b.add_edge("a0", "b0", "link", 1.0);
    rc.edges.push_back({0, 0, 1.0});
  }
  rc.graph = std::move(b).build();
  rc.target = EmbeddingMatrix(dim, Provenance::Homogeneous, "B-B", "B");
  for (std::size_t j = 0; j < sinks; ++j) {
    std::vector<double> v(dim);
    for (auto& c : v) c = x(gen);
    rc.target.add("b" + std::to_string(j), v);
    rc.vectors.push_back(v);
  }
  return rc;
}

}  // namespace gpsp::test
