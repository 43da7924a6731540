#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gpsp/embedding.hpp"

namespace gpsp {

enum class MissingPolicy {
  ZeroFill,  // absent projective blocks become zeros
  DropNode,  // nodes absent from any part are left out
};

std::string_view to_string(MissingPolicy p);
MissingPolicy parse_missing_policy(std::string_view text);

struct CompositionPlan {
  std::string node_type;
  /// First part homogeneous, the rest projective. Projective parts are
  /// reordered by space label before concatenation.
  std::vector<const EmbeddingMatrix*> parts;
  MissingPolicy missing_policy = MissingPolicy::ZeroFill;
  /// Scale each part's block to unit L2 norm before concatenation.
  bool l2_normalize_parts = false;
};

struct PartBoundary {
  std::string space_label;
  std::size_t offset = 0;
  std::size_t dim = 0;

  friend bool operator==(const PartBoundary&, const PartBoundary&) = default;
};

struct Composition {
  EmbeddingMatrix embeddings;
  std::vector<PartBoundary> parts;
};

/// Concatenates a node's part vectors in plan order. Nodes without a
/// homogeneous vector are always dropped. Output rows follow the
/// homogeneous part's row order.
Composition concatenate(const CompositionPlan& plan);

/// Sidecar listing `<space_label> <offset> <dim>` per line.
void write_part_boundaries(const std::vector<PartBoundary>& parts, std::ostream& out);
void save_part_boundaries(const std::vector<PartBoundary>& parts, const std::filesystem::path& path);
std::vector<PartBoundary> load_part_boundaries(const std::filesystem::path& path);

}  // namespace gpsp
