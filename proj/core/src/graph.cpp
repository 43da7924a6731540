#include "gpsp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "gpsp/error.hpp"

namespace gpsp {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error("cannot format floating-point value");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text, const std::string& source, std::size_t line) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(source, line, "invalid number '" + std::string(text) + "'");
  }
  return value;
}

namespace {

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; });
}

}  // namespace

// ---------------------------------------------------------------------------
// HeterogeneousGraph

std::optional<NodeIndex> HeterogeneousGraph::find(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

NodeIndex HeterogeneousGraph::index_of(std::string_view id) const {
  if (auto idx = find(id)) return *idx;
  throw NotFoundError("unknown node id '" + std::string(id) + "'");
}

std::vector<std::string> HeterogeneousGraph::node_types() const {
  std::set<std::string> types;
  for (const auto& n : nodes_) types.insert(n.type);
  return {types.begin(), types.end()};
}

double HeterogeneousGraph::degree(NodeIndex node, std::optional<std::string_view> edge_type) const {
  if (node >= nodes_.size()) {
    throw InvalidArgument("node index " + std::to_string(node) + " out of range");
  }
  if (!edge_type) return total_degree_[node];
  const auto it = degree_by_type_.find(*edge_type);
  if (it == degree_by_type_.end()) {
    throw NotFoundError("unknown edge type '" + std::string(*edge_type) + "'");
  }
  return it->second[node];
}

double HeterogeneousGraph::total_edge_weight() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.weight;
  return total;
}

// ---------------------------------------------------------------------------
// Builder

std::size_t HeterogeneousGraph::Builder::EdgeKeyHash::operator()(const EdgeKey& k) const noexcept {
  std::uint64_t h = (static_cast<std::uint64_t>(k.a) << 32) | k.b;
  h ^= static_cast<std::uint64_t>(k.type) * 0x9E3779B97F4A7C15ULL;
  h ^= h >> 29;
  h *= 0xBF58476D1CE4E5B9ULL;
  return static_cast<std::size_t>(h ^ (h >> 32));
}

NodeIndex HeterogeneousGraph::Builder::add_node(std::string id, std::string type) {
  if (id.empty()) throw InvalidArgument("empty node id");
  if (type.empty()) throw InvalidArgument("empty node type for '" + id + "'");
  const auto index = static_cast<NodeIndex>(graph_.nodes_.size());
  const auto [it, inserted] = graph_.by_id_.emplace(id, index);
  if (!inserted) throw InvalidArgument("duplicate node id '" + id + "'");
  graph_.nodes_.push_back(NodeRef{std::move(id), std::move(type), index});
  return index;
}

void HeterogeneousGraph::Builder::declare_edge_type(const std::string& edge_type, bool directed) {
  const auto existing = graph_.type_table_.find(edge_type);
  if (existing != graph_.type_table_.end() && existing->second.directed != directed) {
    throw TypeConsistencyError("edge type '" + edge_type +
                               "' declared after edges were added with other directedness");
  }
  const auto [it, inserted] = declared_.emplace(edge_type, directed);
  if (!inserted && it->second != directed) {
    throw TypeConsistencyError("conflicting directedness declarations for edge type '" +
                               edge_type + "'");
  }
}

void HeterogeneousGraph::Builder::add_edge(std::string_view src_id, std::string_view dst_id,
                                           const std::string& edge_type, double weight) {
  add_edge(graph_.index_of(src_id), graph_.index_of(dst_id), edge_type, weight);
}

void HeterogeneousGraph::Builder::add_edge(NodeIndex src, NodeIndex dst,
                                           const std::string& edge_type, double weight) {
  if (edge_type.empty()) throw InvalidArgument("empty edge type");
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw InvalidArgument("edge weight must be positive and finite");
  }
  if (src >= graph_.nodes_.size() || dst >= graph_.nodes_.size()) {
    throw InvalidArgument("edge endpoint out of range");
  }
  const auto& src_type = graph_.nodes_[src].type;
  const auto& dst_type = graph_.nodes_[dst].type;

  auto table_it = graph_.type_table_.find(edge_type);
  if (table_it == graph_.type_table_.end()) {
    const auto declared = declared_.find(edge_type);
    const bool directed = declared != declared_.end() && declared->second;
    table_it = graph_.type_table_.emplace(edge_type, EdgeTypeInfo{src_type, dst_type, directed}).first;
    type_ids_.emplace(edge_type, static_cast<std::uint32_t>(type_ids_.size()));
  } else {
    const auto& info = table_it->second;
    const bool forward = info.src_type == src_type && info.dst_type == dst_type;
    const bool swapped = info.src_type == dst_type && info.dst_type == src_type;
    if (!(forward || (!info.directed && swapped))) {
      throw TypeConsistencyError("edge type '" + edge_type + "' joins (" + src_type + ", " +
                                 dst_type + ") but was recorded as (" + info.src_type + ", " +
                                 info.dst_type + ")");
    }
    if (!forward && src_type != dst_type) std::swap(src, dst);
  }

  EdgeKey key{src, dst, type_ids_.at(edge_type)};
  if (!table_it->second.directed && key.a > key.b) std::swap(key.a, key.b);
  const auto [slot, inserted] = edge_slot_.emplace(key, graph_.edges_.size());
  if (inserted) {
    graph_.edges_.push_back(TypedEdge{src, dst, edge_type, weight});
  } else {
    graph_.edges_[slot->second].weight += weight;
  }
}

HeterogeneousGraph HeterogeneousGraph::Builder::build() && {
  auto& g = graph_;
  g.total_degree_.assign(g.nodes_.size(), 0.0);
  for (const auto& [name, info] : g.type_table_) {
    g.degree_by_type_.emplace(name, std::vector<double>(g.nodes_.size(), 0.0));
  }
  for (const auto& e : g.edges_) {
    auto& by_type = g.degree_by_type_.find(e.edge_type)->second;
    g.total_degree_[e.src] += e.weight;
    g.total_degree_[e.dst] += e.weight;
    by_type[e.src] += e.weight;
    by_type[e.dst] += e.weight;
  }
  return std::move(graph_);
}

// ---------------------------------------------------------------------------
// File formats

HeterogeneousGraph read_graph(std::istream& nodes, std::istream& edges,
                              const std::string& node_source, const std::string& edge_source) {
  HeterogeneousGraph::Builder builder;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(nodes, raw)) {
    ++line_no;
    const auto line = strip_cr(raw);
    if (line.empty() || line.front() == '#' || blank(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(node_source, line_no, "expected '<node_id>\\t<node_type>'");
    }
    try {
      builder.add_node(std::string(fields[0]), std::string(fields[1]));
    } catch (const InvalidArgument& e) {
      throw ParseError(node_source, line_no, e.what());
    }
  }

  // Headers may appear anywhere in the edge file, so collect them first.
  struct Row {
    std::size_t line;
    std::string src, dst, type;
    double weight;
  };
  std::vector<Row> rows;
  line_no = 0;
  while (std::getline(edges, raw)) {
    ++line_no;
    const auto line = strip_cr(raw);
    if (line.empty() || blank(line)) continue;
    if (line.front() == '#') {
      constexpr std::string_view kHeader = "#type ";
      if (line.starts_with(kHeader)) {
        auto rest = line.substr(kHeader.size());
        const auto space = rest.find(' ');
        if (space == std::string_view::npos) {
          throw ParseError(edge_source, line_no,
                           "expected '#type <edge_type> directed|undirected'");
        }
        const auto name = std::string(rest.substr(0, space));
        const auto mode = rest.substr(space + 1);
        if (mode != "directed" && mode != "undirected") {
          throw ParseError(edge_source, line_no,
                           "directedness must be 'directed' or 'undirected'");
        }
        try {
          builder.declare_edge_type(name, mode == "directed");
        } catch (const Error& e) {
          throw ParseError(edge_source, line_no, e.what());
        }
      }
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(edge_source, line_no,
                       "expected '<src_id>\\t<dst_id>\\t<edge_type>[\\t<weight>]'");
    }
    if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw ParseError(edge_source, line_no, "empty field");
    }
    double weight = 1.0;
    if (fields.size() == 4) {
      weight = parse_double(fields[3], edge_source, line_no);
      if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw ParseError(edge_source, line_no, "edge weight must be positive and finite");
      }
    }
    rows.push_back(Row{line_no, std::string(fields[0]), std::string(fields[1]),
                       std::string(fields[2]), weight});
  }

  for (const auto& row : rows) {
    try {
      builder.add_edge(row.src, row.dst, row.type, row.weight);
    } catch (const TypeConsistencyError& e) {
      throw TypeConsistencyError(edge_source + ":" + std::to_string(row.line) + ": " + e.what());
    } catch (const Error& e) {
      throw ParseError(edge_source, row.line, e.what());
    }
  }
  return std::move(builder).build();
}

HeterogeneousGraph load_graph(const std::filesystem::path& node_file,
                              const std::filesystem::path& edge_file) {
  std::ifstream nodes(node_file);
  if (!nodes) throw NotFoundError("cannot open node file " + node_file.string());
  std::ifstream edges(edge_file);
  if (!edges) throw NotFoundError("cannot open edge file " + edge_file.string());
  return read_graph(nodes, edges, node_file.string(), edge_file.string());
}

void write_nodes(const HeterogeneousGraph& graph, std::ostream& out) {
  for (const auto& n : graph.nodes()) out << n.id << '\t' << n.type << '\n';
}

void write_edges(const HeterogeneousGraph& graph, std::ostream& out) {
  for (const auto& [name, info] : graph.type_table()) {
    out << "#type " << name << ' ' << (info.directed ? "directed" : "undirected") << '\n';
  }
  for (const auto& e : graph.edges()) {
    out << graph.node(e.src).id << '\t' << graph.node(e.dst).id << '\t' << e.edge_type << '\t'
        << format_double(e.weight) << '\n';
  }
}

void write_graph(const HeterogeneousGraph& graph, const std::filesystem::path& node_file,
                 const std::filesystem::path& edge_file) {
  std::ofstream nodes(node_file);
  if (!nodes) throw Error("cannot write " + node_file.string());
  write_nodes(graph, nodes);
  std::ofstream edges(edge_file);
  if (!edges) throw Error("cannot write " + edge_file.string());
  write_edges(graph, edges);
}

}  // namespace gpsp
