#pragma once

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpsp/graph.hpp"

namespace gpsp {

enum class SubnetworkKind { Homogeneous, Bipartite };

/// Identifies a partition cell by its endpoint node types. Bipartite keys are
/// normalized so that type_a < type_b; homogeneous keys have type_a == type_b.
struct SubnetworkKey {
  SubnetworkKind kind = SubnetworkKind::Homogeneous;
  std::string type_a;
  std::string type_b;

  static SubnetworkKey homogeneous(std::string type);
  /// Order of the two types does not matter.
  static SubnetworkKey bipartite(std::string a, std::string b);
  /// Homogeneous when a == b, bipartite otherwise.
  static SubnetworkKey between(std::string a, std::string b);

  /// "<type_a>-<type_b>", e.g. "author-paper" or "paper-paper".
  std::string label() const;

  friend bool operator==(const SubnetworkKey&, const SubnetworkKey&) = default;
  friend auto operator<=>(const SubnetworkKey& l, const SubnetworkKey& r) {
    if (auto c = l.type_a <=> r.type_a; c != 0) return c;
    return l.type_b <=> r.type_b;
  }
};

/// Edge in subnetwork-local indices. For bipartite cells u is always on the
/// type_a side.
struct LocalEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 0.0;
  bool directed = false;
};

/// Weighted adjacency in CSR form.
struct Adjacency {
  std::vector<std::size_t> offsets;  // size local_count + 1
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;

  std::span<const std::uint32_t> neighbors(std::uint32_t u) const {
    return {targets.data() + offsets[u], offsets[u + 1] - offsets[u]};
  }
  std::span<const double> neighbor_weights(std::uint32_t u) const {
    return {weights.data() + offsets[u], offsets[u + 1] - offsets[u]};
  }
  std::size_t out_degree(std::uint32_t u) const { return offsets[u + 1] - offsets[u]; }
};

/// One partition cell with its own compact node indexing.
class Subnetwork {
 public:
  Subnetwork(SubnetworkKey key, std::set<std::string> edge_types,
             std::vector<NodeIndex> local_nodes, std::vector<LocalEdge> edges,
             const HeterogeneousGraph& graph);

  const SubnetworkKey& key() const noexcept { return key_; }
  SubnetworkKind kind() const noexcept { return key_.kind; }
  bool homogeneous() const noexcept { return key_.kind == SubnetworkKind::Homogeneous; }
  std::string label() const { return key_.label(); }

  const std::set<std::string>& edge_types() const noexcept { return edge_types_; }

  std::size_t node_count() const noexcept { return local_nodes_.size(); }
  /// Local index -> global graph index, ascending.
  const std::vector<NodeIndex>& local_nodes() const noexcept { return local_nodes_; }
  NodeIndex global(std::uint32_t local) const { return local_nodes_.at(local); }
  std::optional<std::uint32_t> local(NodeIndex global) const;

  const std::vector<LocalEdge>& edges() const noexcept { return edges_; }
  double total_weight() const;

  /// Node ids and types resolved through the owning graph.
  const std::string& node_id(std::uint32_t local) const;
  const std::string& node_type(std::uint32_t local) const;

  /// Undirected edges appear in both directions, directed ones only forward.
  /// Neighbors are sorted by local index.
  const Adjacency& adjacency() const noexcept { return adjacency_; }

 private:
  SubnetworkKey key_;
  std::set<std::string> edge_types_;
  std::vector<NodeIndex> local_nodes_;
  std::unordered_map<NodeIndex, std::uint32_t> to_local_;
  std::vector<LocalEdge> edges_;
  Adjacency adjacency_;
  const HeterogeneousGraph* graph_;
};

/// Groups edge types by unordered endpoint-type pair. Returns one cell per
/// pair, sorted by pair. Weights of merged edge types are summed per node
/// pair. The graph must outlive the returned subnetworks.
std::vector<Subnetwork> partition(const HeterogeneousGraph& graph);
// Subnetworks point into the graph, so a temporary would dangle.
std::vector<Subnetwork> partition(HeterogeneousGraph&&) = delete;

/// Lookup by (possibly unordered) type query; throws NotFoundError.
const Subnetwork& subnetwork_of(std::span<const Subnetwork> cells, const SubnetworkKey& query);

/// Writes one `<typeA>-<typeB>.edges` file per cell in the graph edge format.
void dump_partition(std::span<const Subnetwork> cells, const std::filesystem::path& dir);

}  // namespace gpsp
