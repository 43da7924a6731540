#include "gpsp/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "gpsp/error.hpp"
#include "gpsp/rng.hpp"

namespace gpsp {

void SynthConfig::validate() const {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  };
  probability(p_intra, "p_intra");
  probability(p_inter, "p_inter");
  probability(q_intra, "q_intra");
  probability(q_inter, "q_inter");
  probability(rho, "rho");
  if (!(p_inter < p_intra)) throw InvalidArgument("need p_inter < p_intra");
  if (!(q_inter < q_intra)) throw InvalidArgument("need q_inter < q_intra");
  if (communities == 0) throw InvalidArgument("communities must be positive");
  if (authors_per_community == 0 || papers_per_community == 0) {
    throw InvalidArgument("communities must hold at least one author and one paper");
  }
}

namespace {

std::string node_name(const char* prefix, std::size_t i, std::size_t total) {
  const int width = std::max(1, static_cast<int>(std::to_string(total > 0 ? total - 1 : 0).size()));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%0*zu", prefix, width, i);
  return buf;
}

void sbm(HeterogeneousGraph::Builder& b, NodeIndex first, std::size_t count, std::size_t block,
         double intra, double inter, const std::string& type, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double p = i / block == j / block ? intra : inter;
      if (rng.bernoulli(p)) {
        b.add_edge(static_cast<NodeIndex>(first + i), static_cast<NodeIndex>(first + j), type);
      }
    }
  }
}

/// `count` distinct draws from [0, pool) by a partial Fisher-Yates pass.
std::vector<std::size_t> sample_distinct(std::size_t pool, std::size_t count, Rng& rng) {
  count = std::min(count, pool);
  std::vector<std::size_t> values(pool);
  for (std::size_t i = 0; i < pool; ++i) values[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + rng.below(pool - i);
    std::swap(values[i], values[j]);
  }
  values.resize(count);
  return values;
}

}  // namespace

SynthNetwork generate(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t authors = cfg.communities * cfg.authors_per_community;
  const std::size_t papers = cfg.communities * cfg.papers_per_community;

  HeterogeneousGraph::Builder builder;
  SynthNetwork net{HeterogeneousGraph{}, {}, {}};
  for (std::size_t i = 0; i < authors; ++i) {
    auto id = node_name("author", i, authors);
    net.author_labels.pairs.emplace_back(id, static_cast<eval::Label>(i / cfg.authors_per_community));
    builder.add_node(std::move(id), "author");
  }
  for (std::size_t i = 0; i < papers; ++i) {
    auto id = node_name("paper", i, papers);
    net.paper_labels.pairs.emplace_back(id, static_cast<eval::Label>(i / cfg.papers_per_community));
    builder.add_node(std::move(id), "paper");
  }
  net.author_labels.label_count = cfg.communities;
  net.paper_labels.label_count = cfg.communities;

  builder.declare_edge_type("coauthor", false);
  builder.declare_edge_type("cite", false);
  builder.declare_edge_type("write", false);

  Rng coauthor_rng(mix_seed(cfg.seed, 1));
  sbm(builder, 0, authors, cfg.authors_per_community, cfg.p_intra, cfg.p_inter, "coauthor", coauthor_rng);
  Rng cite_rng(mix_seed(cfg.seed, 2));
  sbm(builder, static_cast<NodeIndex>(authors), papers, cfg.papers_per_community, cfg.q_intra,
      cfg.q_inter, "cite", cite_rng);

  Rng write_rng(mix_seed(cfg.seed, 3));
  const std::size_t ppc = cfg.papers_per_community;
  for (std::size_t a = 0; a < authors; ++a) {
    const std::size_t community = a / cfg.authors_per_community;
    auto inside = static_cast<std::size_t>(std::llround(cfg.rho * static_cast<double>(cfg.writes_per_author)));
    std::size_t outside = cfg.writes_per_author - inside;
    if (cfg.communities == 1) {
      inside += outside;
      outside = 0;
    }
    for (const auto p : sample_distinct(ppc, inside, write_rng)) {
      builder.add_edge(static_cast<NodeIndex>(a), static_cast<NodeIndex>(authors + community * ppc + p), "write");
    }
    for (auto p : sample_distinct(papers - ppc, outside, write_rng)) {
      if (p >= community * ppc) p += ppc;  // skip the author's own block
      builder.add_edge(static_cast<NodeIndex>(a), static_cast<NodeIndex>(authors + p), "write");
    }
  }
  net.graph = std::move(builder).build();
  return net;
}

void write_synth(const SynthNetwork& net, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_graph(net.graph, dir / "nodes.tsv", dir / "edges.tsv");
  std::ofstream labels(dir / "labels.tsv");
  if (!labels) throw Error("cannot write " + (dir / "labels.tsv").string());
  eval::write_labels(net.author_labels, labels);
}

}  // namespace gpsp
