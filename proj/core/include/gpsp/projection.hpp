#pragma once

#include <string>

#include "gpsp/embedding.hpp"
#include "gpsp/partition.hpp"

namespace gpsp {

enum class MissingNeighborPolicy {
  Fail,  // throw NotFoundError
  Skip,  // drop the term and shrink the neighbor count
};

std::string_view to_string(MissingNeighborPolicy p);
MissingNeighborPolicy parse_missing_neighbor_policy(std::string_view text);

struct ProjectionOptions {
  MissingNeighborPolicy missing = MissingNeighborPolicy::Fail;
  /// Divide by the sum of weights instead of the neighbor count.
  bool normalize_by_weight_sum = false;
};

/// Projection of one bipartite subnetwork's source-side nodes into the latent
/// space of the target type. target_embeddings must carry the space label of
/// the target type's homogeneous subnetwork.
struct ProjectionSpec {
  const Subnetwork& bipartite;
  std::string source_type;
  std::string target_type;
  const EmbeddingMatrix& target_embeddings;
  ProjectionOptions options{};
};

/// "<source>_to_<target>", the space label of projective matrices.
std::string projection_label(std::string_view source_type, std::string_view target_type);

/// For every source node A with N >= 1 bipartite neighbors B_1..B_N:
///   proj(A) = (1/N) * Σ_j w(A, B_j) * emb(B_j)
/// summed in ascending target node order. The divisor is N, not Σ w, unless
/// normalize_by_weight_sum is set. Source nodes left with no usable
/// neighbor get no row. Rows follow ascending graph index.
EmbeddingMatrix project(const ProjectionSpec& spec);

}  // namespace gpsp
