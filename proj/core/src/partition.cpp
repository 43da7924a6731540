#include "gpsp/partition.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

#include "gpsp/error.hpp"

namespace gpsp {

SubnetworkKey SubnetworkKey::homogeneous(std::string type) {
  SubnetworkKey key{SubnetworkKind::Homogeneous, type, type};
  return key;
}

SubnetworkKey SubnetworkKey::bipartite(std::string a, std::string b) {
  if (a == b) throw InvalidArgument("bipartite subnetwork needs two distinct node types");
  if (b < a) std::swap(a, b);
  return SubnetworkKey{SubnetworkKind::Bipartite, std::move(a), std::move(b)};
}

SubnetworkKey SubnetworkKey::between(std::string a, std::string b) {
  return a == b ? homogeneous(std::move(a)) : bipartite(std::move(a), std::move(b));
}

std::string SubnetworkKey::label() const { return type_a + "-" + type_b; }

namespace {

Adjacency build_adjacency(std::size_t n, const std::vector<LocalEdge>& edges) {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    arcs.emplace_back(e.u, e.v, e.weight);
    if (!e.directed && e.u != e.v) arcs.emplace_back(e.v, e.u, e.weight);
  }
  std::sort(arcs.begin(), arcs.end(), [](const auto& l, const auto& r) {
    return std::tie(std::get<0>(l), std::get<1>(l)) < std::tie(std::get<0>(r), std::get<1>(r));
  });

  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto [s, t, w] = arcs[i];
    if (!adj.targets.empty() && i > 0 && std::get<0>(arcs[i - 1]) == s &&
        std::get<1>(arcs[i - 1]) == t) {
      adj.weights.back() += w;
      continue;
    }
    adj.targets.push_back(t);
    adj.weights.push_back(w);
    ++adj.offsets[s + 1];
  }
  for (std::size_t u = 0; u < n; ++u) adj.offsets[u + 1] += adj.offsets[u];
  return adj;
}

}  // namespace

Subnetwork::Subnetwork(SubnetworkKey key, std::set<std::string> edge_types,
                       std::vector<NodeIndex> local_nodes, std::vector<LocalEdge> edges,
                       const HeterogeneousGraph& graph)
    : key_(std::move(key)),
      edge_types_(std::move(edge_types)),
      local_nodes_(std::move(local_nodes)),
      edges_(std::move(edges)),
      graph_(&graph) {
  to_local_.reserve(local_nodes_.size());
  for (std::uint32_t i = 0; i < local_nodes_.size(); ++i) to_local_.emplace(local_nodes_[i], i);
  adjacency_ = build_adjacency(local_nodes_.size(), edges_);
}

std::optional<std::uint32_t> Subnetwork::local(NodeIndex global) const {
  const auto it = to_local_.find(global);
  if (it == to_local_.end()) return std::nullopt;
  return it->second;
}

double Subnetwork::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.weight;
  return total;
}

const std::string& Subnetwork::node_id(std::uint32_t local) const {
  return graph_->node(global(local)).id;
}

const std::string& Subnetwork::node_type(std::uint32_t local) const {
  return graph_->node(global(local)).type;
}

std::vector<Subnetwork> partition(const HeterogeneousGraph& graph) {
  if (graph.type_table().empty()) throw InvalidArgument("cannot partition a graph with no edge types");

  struct Cell {
    std::set<std::string> edge_types;
    // (a, b, directed) in global indices -> merged weight; insertion order kept.
    std::map<std::tuple<NodeIndex, NodeIndex, bool>, std::size_t> slot;
    std::vector<std::tuple<NodeIndex, NodeIndex, bool, double>> edges;
  };
  std::map<SubnetworkKey, Cell> cells;

  for (const auto& [name, info] : graph.type_table()) {
    cells[SubnetworkKey::between(info.src_type, info.dst_type)].edge_types.insert(name);
  }

  for (const auto& e : graph.edges()) {
    const auto& info = graph.type_table().at(e.edge_type);
    auto key = SubnetworkKey::between(info.src_type, info.dst_type);
    auto& cell = cells.at(key);
    NodeIndex a = e.src;
    NodeIndex b = e.dst;
    bool directed = info.directed;
    if (key.kind == SubnetworkKind::Bipartite) {
      directed = false;
      if (graph.node(a).type != key.type_a) std::swap(a, b);
    } else if (!directed && b < a) {
      std::swap(a, b);
    }
    const auto [it, inserted] = cell.slot.emplace(std::make_tuple(a, b, directed), cell.edges.size());
    if (inserted) {
      cell.edges.emplace_back(a, b, directed, e.weight);
    } else {
      std::get<3>(cell.edges[it->second]) += e.weight;
    }
  }

  std::vector<Subnetwork> out;
  out.reserve(cells.size());
  for (auto& [key, cell] : cells) {
    std::vector<NodeIndex> nodes;
    nodes.reserve(cell.edges.size() * 2);
    for (const auto& [a, b, d, w] : cell.edges) {
      nodes.push_back(a);
      nodes.push_back(b);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    auto local = [&](NodeIndex g) {
      return static_cast<std::uint32_t>(std::lower_bound(nodes.begin(), nodes.end(), g) - nodes.begin());
    };
    std::vector<LocalEdge> edges;
    edges.reserve(cell.edges.size());
    for (const auto& [a, b, d, w] : cell.edges) edges.push_back(LocalEdge{local(a), local(b), w, d});

    out.emplace_back(key, std::move(cell.edge_types), std::move(nodes), std::move(edges), graph);
  }
  return out;
}

const Subnetwork& subnetwork_of(std::span<const Subnetwork> cells, const SubnetworkKey& query) {
  const auto normalized = SubnetworkKey::between(query.type_a, query.type_b);
  if (normalized.kind != query.kind) {
    throw InvalidArgument("query kind does not match its node types");
  }
  for (const auto& cell : cells) {
    if (cell.key() == normalized) return cell;
  }
  throw NotFoundError("no subnetwork " + normalized.label());
}

void dump_partition(std::span<const Subnetwork> cells, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& cell : cells) {
    std::string merged;
    for (const auto& t : cell.edge_types()) merged += (merged.empty() ? "" : "+") + t;
    const auto path = dir / (cell.label() + ".edges");
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    bool any_directed = false;
    for (const auto& e : cell.edges()) any_directed |= e.directed;
    out << "#type " << merged << ' ' << (any_directed ? "directed" : "undirected") << '\n';
    for (const auto& e : cell.edges()) {
      out << cell.node_id(e.u) << '\t' << cell.node_id(e.v) << '\t' << merged << '\t'
          << format_double(e.weight) << '\n';
    }
  }
}

}  // namespace gpsp
