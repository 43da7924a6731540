#include "gpsp/skipgram.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gpsp/error.hpp"
#include "gpsp/objectives.hpp"
#include "gpsp/rng.hpp"

namespace gpsp {

AliasTable unigram_noise_table(std::span<const double> counts, double power) {
  std::vector<double> weights(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    weights[i] = counts[i] > 0.0 ? std::pow(counts[i], power) : 0.0;
  }
  return AliasTable(weights);
}

TrainResult train_skipgram(const WalkCorpus& corpus, const TrainConfig& cfg) {
  cfg.validate();
  if (corpus.tokens.empty()) throw InvalidArgument("skip-gram needs a non-empty corpus");

  const std::size_t n = corpus.node_count();
  const std::size_t dim = cfg.dim;

  std::vector<double> counts(n, 0.0);
  for (const auto t : corpus.tokens) {
    if (t >= n) throw InvalidArgument("walk token outside the corpus vocabulary");
    counts[t] += 1.0;
  }
  const AliasTable noise = unigram_noise_table(counts);

  std::vector<double> input(n * dim);
  std::vector<double> context(n * dim, 0.0);
  {
    Rng init(mix_seed(cfg.seed, 0x5EED0001ULL));
    for (double& x : input) x = (init.uniform() - 0.5) / static_cast<double>(dim);
  }

  const std::size_t walks = corpus.walk_count();
  const double total_tokens = static_cast<double>(corpus.tokens.size() * cfg.epochs);
  std::atomic<std::size_t> processed{0};

  TrainResult result;
  result.epoch_losses.reserve(cfg.epochs);

  struct Tally {
    double loss = 0.0;
    std::size_t pairs = 0;
  };

  auto train_shard = [&](std::size_t first, std::size_t last, Rng rng) {
    Tally tally;
    std::vector<double> scratch(2 * dim);
    std::vector<std::span<double>> negs(cfg.negatives);
    std::size_t local_tokens = 0;
    double lr = cfg.learning_rate;
    for (std::size_t w = first; w < last; ++w) {
      const auto walk = corpus.walk(w);
      for (std::size_t i = 0; i < walk.size(); ++i) {
        if ((local_tokens++ & 0x3FF) == 0) {
          const double done = static_cast<double>(processed.fetch_add(1024));
          const double progress = std::min(1.0, done / total_tokens);
          lr = cfg.learning_rate - (cfg.learning_rate - cfg.min_learning_rate) * progress;
        }
        const std::size_t radius = 1 + rng.below(cfg.window);
        const std::size_t lo = i >= radius ? i - radius : 0;
        const std::size_t hi = std::min(walk.size() - 1, i + radius);
        const std::uint32_t center = walk[i];
        std::span<double> src(input.data() + center * dim, dim);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const std::uint32_t ctx = walk[j];
          std::size_t k = 0;
          for (std::size_t d = 0; d < cfg.negatives; ++d) {
            const auto neg = noise.sample(rng);
            if (neg == ctx) continue;
            negs[k++] = std::span<double>(context.data() + neg * dim, dim);
          }
          tally.loss += negative_sampling_step(
              src, std::span<double>(context.data() + ctx * dim, dim),
              std::span<const std::span<double>>(negs.data(), k), lr, scratch);
          ++tally.pairs;
        }
      }
    }
    return tally;
  };

  const std::size_t threads = std::min(cfg.threads, std::max<std::size_t>(1, walks));
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Tally total;
    if (threads == 1) {
      total = train_shard(0, walks, Rng(mix_seed(cfg.seed, 0x5C1F0000ULL + epoch)));
    } else {
      std::vector<Tally> tallies(threads);
      {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (walks + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
          const std::size_t first = t * chunk;
          const std::size_t last = std::min(walks, first + chunk);
          if (first >= last) continue;
          workers.emplace_back([&, t, first, last] {
            tallies[t] = train_shard(first, last,
                                     Rng(mix_seed(cfg.seed, (0x5C1F0000ULL + epoch) * 131 + t)));
          });
        }
      }
      for (const auto& t : tallies) {
        total.loss += t.loss;
        total.pairs += t.pairs;
      }
    }
    result.epoch_losses.push_back(total.pairs ? total.loss / static_cast<double>(total.pairs) : 0.0);
  }

  result.embeddings = EmbeddingMatrix(dim, Provenance::Homogeneous, corpus.source_subnetwork,
                                      corpus.node_type);
  for (std::size_t u = 0; u < n; ++u) {
    if (counts[u] == 0.0) continue;
    result.embeddings.add(corpus.node_ids[u],
                          std::span<const double>(input.data() + u * dim, dim));
  }
  return result;
}

TrainResult train_deepwalk(const Subnetwork& subnet, const TrainConfig& cfg) {
  return train_skipgram(generate_walks(subnet, cfg), cfg);
}

}  // namespace gpsp
