#include "gpsp/line.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gpsp/error.hpp"
#include "gpsp/objectives.hpp"
#include "gpsp/rng.hpp"

namespace gpsp {

namespace {

struct OrderResult {
  std::vector<double> vectors;  // n * dim, input side
  std::vector<double> epoch_losses;
};

OrderResult train_order(const Subnetwork& subnet, const TrainConfig& cfg, std::size_t dim,
                        bool first_order, std::uint64_t seed) {
  const auto& adj = subnet.adjacency();
  const std::size_t n = subnet.node_count();

  std::vector<std::uint32_t> arc_src;
  arc_src.reserve(adj.targets.size());
  for (std::uint32_t u = 0; u < n; ++u) {
    arc_src.insert(arc_src.end(), adj.out_degree(u), u);
  }
  const AliasTable arcs(adj.weights);

  std::vector<double> out_degree(n, 0.0);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (const double w : adj.neighbor_weights(u)) out_degree[u] += w;
  }
  const AliasTable noise = unigram_noise_table(out_degree);

  std::vector<double> vertex(n * dim);
  std::vector<double> context(first_order ? 0 : n * dim, 0.0);
  {
    Rng init(mix_seed(seed, 0x5EED0002ULL));
    for (double& x : vertex) x = (init.uniform() - 0.5) / static_cast<double>(dim);
  }
  double* targets = first_order ? vertex.data() : context.data();

  const auto total = static_cast<std::size_t>(
      std::llround(cfg.line_samples_per_edge * static_cast<double>(subnet.edges().size())));
  std::atomic<std::size_t> processed{0};

  auto run = [&](std::size_t samples, Rng rng, double& loss) {
    std::vector<double> scratch(2 * dim);
    std::vector<std::span<double>> negs(cfg.negatives);
    double lr = cfg.learning_rate;
    for (std::size_t s = 0; s < samples; ++s) {
      if ((s & 0x3FF) == 0) {
        const double progress =
            std::min(1.0, static_cast<double>(processed.fetch_add(1024)) / static_cast<double>(total));
        lr = cfg.learning_rate - (cfg.learning_rate - cfg.min_learning_rate) * progress;
      }
      const auto arc = arcs.sample(rng);
      const std::uint32_t i = arc_src[arc];
      const std::uint32_t j = adj.targets[arc];
      std::size_t k = 0;
      for (std::size_t d = 0; d < cfg.negatives; ++d) {
        const auto neg = noise.sample(rng);
        if (neg == j || (first_order && neg == i)) continue;
        negs[k++] = std::span<double>(targets + neg * dim, dim);
      }
      loss += negative_sampling_step(std::span<double>(vertex.data() + i * dim, dim),
                                     std::span<double>(targets + j * dim, dim),
                                     std::span<const std::span<double>>(negs.data(), k), lr,
                                     scratch);
    }
  };

  OrderResult result;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const std::size_t samples = total * (epoch + 1) / cfg.epochs - total * epoch / cfg.epochs;
    double loss = 0.0;
    if (cfg.threads <= 1) {
      run(samples, Rng(mix_seed(seed, 0x11AE0000ULL + epoch)), loss);
    } else {
      std::vector<double> losses(cfg.threads, 0.0);
      {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (samples + cfg.threads - 1) / cfg.threads;
        for (std::size_t t = 0; t < cfg.threads; ++t) {
          const std::size_t first = t * chunk;
          const std::size_t last = std::min(samples, first + chunk);
          if (first >= last) continue;
          workers.emplace_back([&, t, first, last] {
            run(last - first, Rng(mix_seed(seed, (0x11AE0000ULL + epoch) * 131 + t)), losses[t]);
          });
        }
      }
      for (const double l : losses) loss += l;
    }
    result.epoch_losses.push_back(samples ? loss / static_cast<double>(samples) : 0.0);
  }
  result.vectors = std::move(vertex);
  return result;
}

}  // namespace

TrainResult train_line(const Subnetwork& subnet, const TrainConfig& cfg) {
  if (!subnet.homogeneous()) {
    throw InvalidArgument("LINE needs a homogeneous subnetwork, got " + subnet.label());
  }
  cfg.validate();
  if (subnet.edges().empty() || !(subnet.total_weight() > 0.0)) {
    throw InvalidArgument("LINE needs a subnetwork with positive total edge weight");
  }
  if (cfg.line_samples_per_edge * static_cast<double>(subnet.edges().size()) < 1.0) {
    throw InvalidArgument("LINE sample budget rounds to zero");
  }

  const std::size_t n = subnet.node_count();
  TrainResult result;
  result.embeddings = EmbeddingMatrix(cfg.dim, Provenance::Homogeneous, subnet.label(),
                                      subnet.key().type_a);

  std::vector<OrderResult> parts;
  std::vector<std::size_t> dims;
  switch (cfg.line_order) {
    case LineOrder::First:
      parts.push_back(train_order(subnet, cfg, cfg.dim, true, mix_seed(cfg.seed, 1)));
      dims.push_back(cfg.dim);
      break;
    case LineOrder::Second:
      parts.push_back(train_order(subnet, cfg, cfg.dim, false, mix_seed(cfg.seed, 2)));
      dims.push_back(cfg.dim);
      break;
    case LineOrder::Both:
      parts.push_back(train_order(subnet, cfg, cfg.dim / 2, true, mix_seed(cfg.seed, 1)));
      parts.push_back(train_order(subnet, cfg, cfg.dim / 2, false, mix_seed(cfg.seed, 2)));
      dims.assign(2, cfg.dim / 2);
      break;
  }

  result.epoch_losses.assign(cfg.epochs, 0.0);
  for (const auto& p : parts) {
    for (std::size_t e = 0; e < cfg.epochs; ++e) result.epoch_losses[e] += p.epoch_losses[e];
  }

  for (std::uint32_t u = 0; u < n; ++u) {
    auto row = result.embeddings.add_zero(subnet.node_id(u));
    std::size_t offset = 0;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const double* src = parts[p].vectors.data() + u * dims[p];
      std::copy(src, src + dims[p], row.begin() + static_cast<std::ptrdiff_t>(offset));
      offset += dims[p];
    }
  }
  return result;
}

}  // namespace gpsp
