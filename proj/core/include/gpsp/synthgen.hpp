#pragma once

#include <cstdint>
#include <filesystem>

#include "gpsp/eval/metrics.hpp"
#include "gpsp/graph.hpp"

namespace gpsp {

/// Planted-community academic network: author-author ("coauthor") and
/// paper-paper ("cite") edges from two stochastic block models, plus
/// author-paper ("write") edges. Defaults are the desk-scale acceptance
/// regime.
struct SynthConfig {
  std::size_t communities = 4;
  std::size_t authors_per_community = 200;
  std::size_t papers_per_community = 200;
  double p_intra = 0.025;  // coauthor SBM
  double p_inter = 0.003;
  double q_intra = 0.04;   // citation SBM
  double q_inter = 0.002;
  std::size_t writes_per_author = 5;
  double rho = 0.9;        // share of an author's papers inside its community
  std::uint64_t seed = 1;

  /// Throws InvalidArgument.
  void validate() const;
};

struct SynthNetwork {
  HeterogeneousGraph graph;
  eval::LabeledSet author_labels;
  eval::LabeledSet paper_labels;
};

/// Deterministic given cfg.seed. Authors are `author_<i>`, papers
/// `paper_<i>`; community c holds a contiguous index block. round(rho * w)
/// of an author's w papers come from its own community and the rest
/// uniformly from the others (all from its own when there is one community).
SynthNetwork generate(const SynthConfig& cfg);

/// Writes nodes.tsv, edges.tsv and labels.tsv (authors) into dir.
void write_synth(const SynthNetwork& net, const std::filesystem::path& dir);

}  // namespace gpsp
