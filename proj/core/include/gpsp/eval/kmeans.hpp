#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpsp/eval/metrics.hpp"

namespace gpsp::eval {

struct KMeansResult {
  std::vector<Label> assignments;
  std::vector<double> centroids;    // k x dim
  std::vector<double> inertia_log;  // after every assignment step
  double inertia = 0.0;
  std::size_t iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding over n = data.size() / dim rows.
/// Stops when assignments no longer change or after max_iter assignment
/// steps. A centroid left without members moves to the point farthest from
/// its current centroid. Ties go to the lower centroid index.
KMeansResult kmeans(std::span<const double> data, std::size_t dim, std::size_t k,
                    std::uint64_t seed, std::size_t max_iter = 300);

KMeansResult kmeans(const EmbeddingMatrix& embeddings, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter = 300);

}  // namespace gpsp::eval
