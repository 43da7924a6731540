#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gpsp {

using NodeIndex = std::uint32_t;

struct NodeRef {
  std::string id;
  std::string type;
  NodeIndex index = 0;
};

/// Endpoint node types recorded for one edge type. For undirected edge
/// types the pair is unordered; it is stored as first seen.
struct EdgeTypeInfo {
  std::string src_type;
  std::string dst_type;
  bool directed = false;

  friend bool operator==(const EdgeTypeInfo&, const EdgeTypeInfo&) = default;
};

struct TypedEdge {
  NodeIndex src = 0;
  NodeIndex dst = 0;
  std::string edge_type;
  double weight = 1.0;

  friend bool operator==(const TypedEdge&, const TypedEdge&) = default;
};

using TypeTable = std::map<std::string, EdgeTypeInfo>;

/// Typed nodes, typed weighted edges and the edge-type table. Immutable once
/// built; concurrent reads are safe.
class HeterogeneousGraph {
 public:
  class Builder;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<NodeRef>& nodes() const noexcept { return nodes_; }
  const std::vector<TypedEdge>& edges() const noexcept { return edges_; }
  const NodeRef& node(NodeIndex index) const { return nodes_.at(index); }

  std::optional<NodeIndex> find(std::string_view id) const;
  NodeIndex index_of(std::string_view id) const;  // throws NotFoundError

  /// Sorted by edge-type string.
  const TypeTable& type_table() const noexcept { return type_table_; }

  /// Distinct node types, sorted.
  std::vector<std::string> node_types() const;

  /// Weighted degree, optionally restricted to one edge type. Each edge
  /// contributes its weight once at each endpoint, so a self-loop counts
  /// twice.
  double degree(NodeIndex node, std::optional<std::string_view> edge_type = std::nullopt) const;

  double total_edge_weight() const;

 private:
  std::vector<NodeRef> nodes_;
  std::unordered_map<std::string, NodeIndex> by_id_;
  std::vector<TypedEdge> edges_;
  TypeTable type_table_;
  std::vector<double> total_degree_;
  std::map<std::string, std::vector<double>, std::less<>> degree_by_type_;
};

/// Incremental construction with the same checks as the file loader:
/// unknown endpoints and type conflicts are rejected, duplicate
/// (src, dst, edge_type) rows have their weights summed.
class HeterogeneousGraph::Builder {
 public:
  NodeIndex add_node(std::string id, std::string type);
  void declare_edge_type(const std::string& edge_type, bool directed);
  void add_edge(std::string_view src_id, std::string_view dst_id, const std::string& edge_type,
                double weight = 1.0);
  void add_edge(NodeIndex src, NodeIndex dst, const std::string& edge_type, double weight = 1.0);

  HeterogeneousGraph build() &&;

 private:
  struct EdgeKey {
    NodeIndex a, b;
    std::uint32_t type;
    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  };
  struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const noexcept;
  };

  HeterogeneousGraph graph_;
  std::map<std::string, bool> declared_;
  std::unordered_map<std::string, std::uint32_t> type_ids_;
  std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> edge_slot_;
};

HeterogeneousGraph read_graph(std::istream& nodes, std::istream& edges,
                              const std::string& node_source = "<nodes>",
                              const std::string& edge_source = "<edges>");
HeterogeneousGraph load_graph(const std::filesystem::path& node_file,
                              const std::filesystem::path& edge_file);

void write_nodes(const HeterogeneousGraph& graph, std::ostream& out);
void write_edges(const HeterogeneousGraph& graph, std::ostream& out);
void write_graph(const HeterogeneousGraph& graph, const std::filesystem::path& node_file,
                 const std::filesystem::path& edge_file);

/// Splits on tabs; used by every line-oriented reader in the library.
std::vector<std::string_view> split_tabs(std::string_view line);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text, const std::string& source, std::size_t line);

}  // namespace gpsp
