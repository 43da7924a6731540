#include "gpsp/walks.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "gpsp/alias_table.hpp"
#include "gpsp/error.hpp"
#include "gpsp/rng.hpp"

namespace gpsp {

void WalkCorpus::add_walk(std::span<const std::uint32_t> walk) {
  tokens.insert(tokens.end(), walk.begin(), walk.end());
  offsets.push_back(tokens.size());
}

WalkCorpus generate_walks(const Subnetwork& subnet, const TrainConfig& cfg) {
  if (!subnet.homogeneous()) {
    throw InvalidArgument("random walks need a homogeneous subnetwork, got " + subnet.label());
  }
  cfg.validate();

  const auto& adj = subnet.adjacency();
  const auto n = static_cast<std::uint32_t>(subnet.node_count());

  // Nodes whose neighbor weights are all equal sample uniformly.
  std::vector<AliasTable> transition(n);
  std::vector<std::uint32_t> starts;
  for (std::uint32_t u = 0; u < n; ++u) {
    const auto w = adj.neighbor_weights(u);
    if (w.empty()) continue;
    starts.push_back(u);
    if (std::adjacent_find(w.begin(), w.end(), std::not_equal_to<>{}) != w.end()) {
      transition[u] = AliasTable(w);
    }
  }

  WalkCorpus corpus;
  corpus.source_subnetwork = subnet.label();
  corpus.node_type = subnet.key().type_a;
  corpus.node_ids.reserve(n);
  for (std::uint32_t u = 0; u < n; ++u) corpus.node_ids.push_back(subnet.node_id(u));

  // Start order: one seeded shuffle per pass.
  const std::size_t walk_count = cfg.walks_per_node * starts.size();
  std::vector<std::uint32_t> order;
  order.reserve(walk_count);
  for (std::size_t pass = 0; pass < cfg.walks_per_node; ++pass) {
    std::vector<std::uint32_t> shuffled = starts;
    Rng rng(mix_seed(cfg.seed, 0xA11CE000ULL + pass));
    shuffle(shuffled.begin(), shuffled.end(), rng);
    order.insert(order.end(), shuffled.begin(), shuffled.end());
  }

  std::vector<std::uint32_t> tokens(walk_count * cfg.walk_length);
  std::vector<std::uint32_t> lengths(walk_count, 0);

  auto run = [&](std::size_t first, std::size_t last) {
    for (std::size_t w = first; w < last; ++w) {
      Rng rng(mix_seed(cfg.seed, w));
      std::uint32_t* out = tokens.data() + w * cfg.walk_length;
      std::uint32_t cur = order[w];
      std::size_t len = 0;
      out[len++] = cur;
      while (len < cfg.walk_length) {
        const auto nbrs = adj.neighbors(cur);
        if (nbrs.empty()) break;
        const auto pick = transition[cur].empty()
                              ? static_cast<std::uint32_t>(rng.below(nbrs.size()))
                              : transition[cur].sample(rng);
        cur = nbrs[pick];
        out[len++] = cur;
      }
      lengths[w] = static_cast<std::uint32_t>(len);
    }
  };

  const std::size_t threads = std::min<std::size_t>(cfg.threads, std::max<std::size_t>(1, walk_count));
  if (threads <= 1) {
    run(0, walk_count);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (walk_count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t first = t * chunk;
      const std::size_t last = std::min(walk_count, first + chunk);
      if (first < last) workers.emplace_back(run, first, last);
    }
  }

  corpus.tokens.reserve(std::accumulate(lengths.begin(), lengths.end(), std::size_t{0}));
  corpus.offsets.reserve(walk_count + 1);
  for (std::size_t w = 0; w < walk_count; ++w) {
    corpus.add_walk(std::span<const std::uint32_t>(tokens.data() + w * cfg.walk_length, lengths[w]));
  }
  return corpus;
}

}  // namespace gpsp
