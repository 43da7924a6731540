#include "gpsp/eval/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "gpsp/error.hpp"
#include "gpsp/rng.hpp"

namespace gpsp::eval {

namespace {

double sq_dist(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

}  // namespace

KMeansResult kmeans(std::span<const double> data, std::size_t dim, std::size_t k,
                    std::uint64_t seed, std::size_t max_iter) {
  if (dim == 0 || data.size() % dim != 0) throw InvalidArgument("kmeans: bad data shape");
  const std::size_t n = data.size() / dim;
  if (k == 0) throw InvalidArgument("kmeans: k must be positive");
  if (k > n) {
    throw InvalidArgument("kmeans: k = " + std::to_string(k) + " exceeds " + std::to_string(n) +
                          " points");
  }
  if (max_iter == 0) throw InvalidArgument("kmeans: max_iter must be positive");

  const double* x = data.data();
  KMeansResult r;
  r.centroids.assign(k * dim, 0.0);
  Rng rng(seed);

  // k-means++ seeding.
  std::vector<double> closest(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);
  std::size_t pick = rng.below(n);
  for (std::size_t c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += closest[i];
      if (total > 0.0) {
        double target = rng.uniform() * total;
        pick = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (closest[i] <= 0.0) continue;
          pick = i;
          target -= closest[i];
          if (target < 0.0) break;
        }
      } else {
        pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
      }
    }
    chosen[pick] = true;
    std::copy(x + pick * dim, x + (pick + 1) * dim, r.centroids.begin() + static_cast<std::ptrdiff_t>(c * dim));
    for (std::size_t i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], sq_dist(x + i * dim, x + pick * dim, dim));
    }
  }

  r.assignments.assign(n, -1);
  std::vector<double> dist(n);
  std::vector<std::size_t> members(k);
  for (std::size_t it = 0; it < max_iter; ++it) {
    bool changed = false;
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      Label best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d = sq_dist(x + i * dim, r.centroids.data() + c * dim, dim);
        if (d < best) {
          best = d;
          best_c = static_cast<Label>(c);
        }
      }
      if (r.assignments[i] != best_c) changed = true;
      r.assignments[i] = best_c;
      dist[i] = best;
      inertia += best;
    }
    r.inertia_log.push_back(inertia);
    r.inertia = inertia;
    r.iterations = it + 1;
    if (!changed) break;

    // Update step.
    std::fill(r.centroids.begin(), r.centroids.end(), 0.0);
    std::fill(members.begin(), members.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(r.assignments[i]);
      ++members[c];
      double* dst = r.centroids.data() + c * dim;
      for (std::size_t j = 0; j < dim; ++j) dst[j] += x[i * dim + j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (members[c] == 0) continue;
      double* dst = r.centroids.data() + c * dim;
      for (std::size_t j = 0; j < dim; ++j) dst[j] /= static_cast<double>(members[c]);
    }
    // Re-seed empty clusters at the points farthest from their new centroids.
    const bool any_empty = std::find(members.begin(), members.end(), 0) != members.end();
    if (any_empty) {
      std::vector<bool> taken(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        dist[i] = sq_dist(x + i * dim, r.centroids.data() + static_cast<std::size_t>(r.assignments[i]) * dim, dim);
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (members[c] != 0) continue;
        std::size_t far = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (taken[i]) continue;
          if (far == n || dist[i] > dist[far]) far = i;
        }
        taken[far] = true;
        std::copy(x + far * dim, x + (far + 1) * dim, r.centroids.begin() + static_cast<std::ptrdiff_t>(c * dim));
      }
    }
  }
  return r;
}

KMeansResult kmeans(const EmbeddingMatrix& embeddings, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter) {
  return kmeans(embeddings.data(), embeddings.dim(), k, seed, max_iter);
}

}  // namespace gpsp::eval
