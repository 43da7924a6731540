#include "gpsp/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "gpsp/error.hpp"
#include "gpsp/graph.hpp"

namespace gpsp {

std::string_view to_string(Backend b) { return b == Backend::DeepWalk ? "deepwalk" : "line"; }

Backend parse_backend(std::string_view text) {
  if (text == "deepwalk") return Backend::DeepWalk;
  if (text == "line") return Backend::Line;
  throw InvalidArgument("backend must be 'deepwalk' or 'line', got '" + std::string(text) + "'");
}

std::string method_name(Backend b, bool gpsp) {
  const std::string base = b == Backend::DeepWalk ? "DeepWalk" : "LINE";
  return gpsp ? "GPSP-" + base : base;
}

namespace {

template <typename T>
T parse_unsigned(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidArgument("'" + std::string(key) + "' expects a non-negative integer, got '" +
                          std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view key, std::string_view text) {
  try {
    return parse_double(text, std::string(key), 0);
  } catch (const ParseError&) {
    throw InvalidArgument("'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw InvalidArgument("'" + std::string(key) + "' expects true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_fractions(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) out.push_back(parse_real(key, token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw InvalidArgument("'" + std::string(key) + "' needs at least one fraction");
  return out;
}

std::string join_fractions(const std::vector<double>& fractions) {
  std::string s;
  for (const double f : fractions) s += (s.empty() ? "" : ",") + format_double(f);
  return s;
}

std::string_view bool_text(bool b) { return b ? "true" : "false"; }

struct Accessor {
  ConfigKey key;
  std::function<void(PipelineConfig&, std::string_view)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

const std::vector<Accessor>& accessors() {
  static const std::vector<Accessor> table = [] {
    std::vector<Accessor> t;
    auto add = [&](std::string_view section, std::string_view name, std::string_view help,
                   std::function<void(PipelineConfig&, std::string_view)> set,
                   std::function<std::string(const PipelineConfig&)> get) {
      t.push_back(Accessor{ConfigKey{section, name, help}, std::move(set), std::move(get)});
    };
#define GPSP_UINT(section, name, field, help)                                                   \
  add(section, name, help,                                                                      \
      [](PipelineConfig& c, std::string_view v) {                                               \
        c.field = parse_unsigned<std::remove_cvref_t<decltype(c.field)>>(name, v);              \
      },                                                                                        \
      [](const PipelineConfig& c) { return std::to_string(c.field); })
#define GPSP_REAL(section, name, field, help)                                                   \
  add(section, name, help, [](PipelineConfig& c, std::string_view v) { c.field = parse_real(name, v); }, \
      [](const PipelineConfig& c) { return format_double(c.field); })
#define GPSP_BOOL(section, name, field, help)                                                   \
  add(section, name, help, [](PipelineConfig& c, std::string_view v) { c.field = parse_bool(name, v); }, \
      [](const PipelineConfig& c) { return std::string(bool_text(c.field)); })
#define GPSP_PATH(section, name, field, help)                                                   \
  add(section, name, help, [](PipelineConfig& c, std::string_view v) { c.field = std::string(v); }, \
      [](const PipelineConfig& c) { return c.field.string(); })

    GPSP_PATH("input", "nodes", nodes, "node file: <node_id>\\t<node_type>");
    GPSP_PATH("input", "edges", edges, "edge file: <src>\\t<dst>\\t<edge_type>[\\t<weight>]");
    GPSP_PATH("input", "labels", labels, "labels file: <node_id>\\t<label_int>");

    add("pipeline", "backend", "deepwalk or line",
        [](PipelineConfig& c, std::string_view v) { c.backend = parse_backend(v); },
        [](const PipelineConfig& c) { return std::string(to_string(c.backend)); });
    GPSP_PATH("pipeline", "out_dir", out_dir, "output directory");
    GPSP_UINT("pipeline", "seed", seed, "random seed");
    GPSP_UINT("pipeline", "threads", threads, "worker threads (1 = deterministic)");
    GPSP_BOOL("pipeline", "binary", binary, "write embeddings in the binary format");
    GPSP_BOOL("pipeline", "resume", resume, "reuse stages whose input hashes are unchanged");
    GPSP_BOOL("pipeline", "dump_partition", dump_partition, "write <typeA>-<typeB>.edges per subnetwork");
    GPSP_BOOL("pipeline", "verbose", verbose, "log stage progress to stderr");

    GPSP_UINT("train", "dim", train.dim, "embedding dimension (0 = 128 deepwalk / 256 line)");
    GPSP_UINT("train", "walks_per_node", train.walks_per_node, "walks started at each node");
    GPSP_UINT("train", "walk_length", train.walk_length, "nodes per walk");
    GPSP_UINT("train", "window", train.window, "skip-gram window radius");
    GPSP_UINT("train", "negatives", train.negatives, "negative samples per positive");
    GPSP_UINT("train", "epochs", train.epochs, "training epochs");
    GPSP_REAL("train", "learning_rate", train.learning_rate, "initial learning rate");
    GPSP_REAL("train", "min_learning_rate", train.min_learning_rate, "final learning rate");
    add("train", "line_order", "LINE proximity order: 1, 2 or 1+2",
        [](PipelineConfig& c, std::string_view v) { c.train.line_order = parse_line_order(v); },
        [](const PipelineConfig& c) { return std::string(to_string(c.train.line_order)); });
    GPSP_REAL("train", "line_samples_per_edge", train.line_samples_per_edge, "LINE samples per edge and order");

    add("projection", "missing_neighbor", "fail or skip",
        [](PipelineConfig& c, std::string_view v) { c.projection.missing = parse_missing_neighbor_policy(v); },
        [](const PipelineConfig& c) { return std::string(to_string(c.projection.missing)); });
    GPSP_BOOL("projection", "normalize_by_weight_sum", projection.normalize_by_weight_sum,
              "divide by the weight sum instead of the neighbor count");

    add("compose", "missing_policy", "zero_fill or drop_node",
        [](PipelineConfig& c, std::string_view v) { c.missing_policy = parse_missing_policy(v); },
        [](const PipelineConfig& c) { return std::string(to_string(c.missing_policy)); });
    GPSP_BOOL("compose", "l2_normalize", l2_normalize, "unit-normalize each part before concatenation");

    add("eval", "node_type", "labeled node type (empty = infer)",
        [](PipelineConfig& c, std::string_view v) { c.node_type = std::string(v); },
        [](const PipelineConfig& c) { return c.node_type; });
    add("eval", "fractions", "comma-separated train fractions",
        [](PipelineConfig& c, std::string_view v) { c.eval.fractions = parse_fractions("fractions", v); },
        [](const PipelineConfig& c) { return join_fractions(c.eval.fractions); });
    GPSP_UINT("eval", "clusters", eval.clusters, "k for k-means (0 = number of labels)");
    GPSP_UINT("eval", "kmeans_iters", eval.kmeans_iters, "maximum Lloyd iterations");
    GPSP_UINT("eval", "kmeans_restarts", eval.kmeans_restarts, "k-means++ restarts");
    GPSP_REAL("eval", "classifier_l2", eval.classifier.l2, "logistic-regression L2 penalty");
    GPSP_UINT("eval", "classifier_iters", eval.classifier.max_iter, "gradient-descent iterations");

    GPSP_UINT("synth", "communities", synth.communities, "planted communities");
    GPSP_UINT("synth", "authors_per_community", synth.authors_per_community, "authors per community");
    GPSP_UINT("synth", "papers_per_community", synth.papers_per_community, "papers per community");
    GPSP_REAL("synth", "p_intra", synth.p_intra, "coauthor probability inside a community");
    GPSP_REAL("synth", "p_inter", synth.p_inter, "coauthor probability across communities");
    GPSP_REAL("synth", "q_intra", synth.q_intra, "citation probability inside a community");
    GPSP_REAL("synth", "q_inter", synth.q_inter, "citation probability across communities");
    GPSP_UINT("synth", "writes_per_author", synth.writes_per_author, "papers per author");
    GPSP_REAL("synth", "rho", synth.rho, "share of an author's papers inside its community");
#undef GPSP_UINT
#undef GPSP_REAL
#undef GPSP_BOOL
#undef GPSP_PATH
    return t;
  }();
  return table;
}

const Accessor& accessor(std::string_view key) {
  std::string_view section;
  std::string_view name = key;
  if (const auto dot = key.find('.'); dot != std::string_view::npos) {
    section = key.substr(0, dot);
    name = key.substr(dot + 1);
  }
  for (const auto& a : accessors()) {
    if (a.key.name == name && (section.empty() || a.key.section == section)) return a;
  }
  throw InvalidArgument("unknown configuration key '" + std::string(key) + "'");
}

}  // namespace

PipelineConfig::PipelineConfig() { train.dim = 0; }

void PipelineConfig::set(std::string_view key, std::string_view value) {
  accessor(key).set(*this, value);
}

TrainConfig PipelineConfig::effective_train() const {
  TrainConfig t = train;
  if (t.dim == 0) t.dim = backend == Backend::Line ? kLineDim : kDeepWalkDim;
  t.seed = seed;
  t.threads = threads;
  return t;
}

eval::EvalOptions PipelineConfig::effective_eval() const {
  eval::EvalOptions e = eval;
  e.seed = seed;
  e.threads = threads;
  return e;
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::resolved() const {
  PipelineConfig copy = *this;
  copy.train.dim = effective_train().dim;
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& a : accessors()) {
    out.emplace_back(std::string(a.key.section) + "." + std::string(a.key.name), a.get(copy));
  }
  return out;
}

void PipelineConfig::validate(bool require_labels) const {
  auto must_exist = [](const std::filesystem::path& p, const char* what) {
    if (p.empty()) throw InvalidArgument(std::string(what) + " path is not set");
    if (!std::filesystem::exists(p)) throw InvalidArgument(std::string(what) + " file " + p.string() + " does not exist");
  };
  must_exist(nodes, "nodes");
  must_exist(edges, "edges");
  if (require_labels) must_exist(labels, "labels");
  if (threads == 0) throw InvalidArgument("threads must be positive");
  effective_train().validate();
  for (const double f : eval.fractions) {
    if (!(f > 0.0 && f < 1.0)) throw InvalidArgument("train fractions must lie in (0, 1)");
  }
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    for (const auto& a : accessors()) k.push_back(a.key);
    return k;
  }();
  return keys;
}

namespace {

void apply_tree(PipelineConfig& cfg, const boost::property_tree::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      cfg.set(section, body.data());
      continue;
    }
    for (const auto& [name, value] : body) {
      const auto key = section + "." + name;
      const auto& a = accessor(key);
      if (a.key.section != section) {
        throw InvalidArgument("key '" + name + "' belongs in section [" + std::string(a.key.section) + "]");
      }
      a.set(cfg, value.data());
    }
  }
}

}  // namespace

PipelineConfig read_config(std::istream& in, const std::string& source) {
  PipelineConfig cfg;
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(source, e.line(), e.message());
  }
  apply_tree(cfg, tree);
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  PipelineConfig cfg;
  merge_config(cfg, path);
  return cfg;
}

void merge_config(PipelineConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open config file " + path.string());
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(path.string(), e.line(), e.message());
  }
  apply_tree(cfg, tree);
}

void write_config(const PipelineConfig& cfg, std::ostream& out) {
  std::string_view section;
  const auto values = cfg.resolved();
  const auto& keys = config_keys();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].section != section) {
      section = keys[i].section;
      out << (i ? "\n" : "") << '[' << section << "]\n";
    }
    out << keys[i].name << " = " << values[i].second << '\n';
  }
}

}  // namespace gpsp
