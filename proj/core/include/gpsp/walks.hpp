#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpsp/partition.hpp"
#include "gpsp/train_config.hpp"

namespace gpsp {

/// Truncated random walks over one homogeneous subnetwork, stored flat.
/// Tokens are subnetwork-local node indices.
struct WalkCorpus {
  std::string source_subnetwork;
  std::string node_type;
  std::vector<std::string> node_ids;  // local index -> node id
  std::vector<std::uint32_t> tokens;
  std::vector<std::size_t> offsets{0};  // walk w is tokens[offsets[w], offsets[w+1])

  std::size_t walk_count() const noexcept { return offsets.size() - 1; }
  std::size_t node_count() const noexcept { return node_ids.size(); }
  std::span<const std::uint32_t> walk(std::size_t w) const {
    return {tokens.data() + offsets[w], offsets[w + 1] - offsets[w]};
  }
  void add_walk(std::span<const std::uint32_t> walk);
};

/// walks_per_node walks of at most walk_length nodes start at every node
/// with an outgoing edge. Each step picks a neighbor with probability
/// proportional to edge weight; a walk stops early only at a node without
/// outgoing edges. Every walk draws from its own seed, so the corpus is the
/// same for any thread count.
WalkCorpus generate_walks(const Subnetwork& subnet, const TrainConfig& cfg);

}  // namespace gpsp
