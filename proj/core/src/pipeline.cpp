#include "gpsp/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "gpsp/compose.hpp"
#include "gpsp/line.hpp"
#include "gpsp/manifest.hpp"
#include "gpsp/projection.hpp"

namespace gpsp {

namespace fs = std::filesystem;

TrainResult embed_homogeneous(const Subnetwork& subnet, Backend backend, const TrainConfig& cfg) {
  return backend == Backend::DeepWalk ? train_deepwalk(subnet, cfg) : train_line(subnet, cfg);
}

std::string labeled_node_type(const PipelineConfig& cfg, const HeterogeneousGraph& graph,
                              const eval::LabeledSet& labels) {
  if (!cfg.node_type.empty()) return cfg.node_type;
  std::set<std::string> types;
  for (const auto& [id, label] : labels.pairs) {
    if (const auto idx = graph.find(id)) types.insert(graph.node(*idx).type);
  }
  if (types.empty()) throw InvalidArgument("no labeled id occurs in the graph");
  if (types.size() > 1) {
    throw InvalidArgument("labeled ids span several node types; set eval.node_type");
  }
  return *types.begin();
}

eval::EvaluationReport read_metrics(std::istream& in, const std::string& source) {
  eval::EvaluationReport r;
  std::map<double, eval::FractionScores> fractions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected metric=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    auto number = [&] { return parse_double(value, source, line_no); };
    if (key == "method") r.method = value;
    else if (key == "seed") r.seed = std::stoull(value);
    else if (key == "matched_node_count") r.matched_node_count = std::stoull(value);
    else if (key == "unmatched_label_count") r.unmatched_label_count = std::stoull(value);
    else if (key == "clusters") r.clusters = std::stoull(value);
    else if (key == "nmi") r.nmi = number();
    else if (key == "warning") r.warnings.push_back(value);
    else if (key.starts_with("micro_f1@") || key.starts_with("macro_f1@")) {
      const double f = parse_double(std::string_view(key).substr(9), source, line_no);
      auto& slot = fractions[f];
      slot.fraction = f;
      (key[1] == 'i' ? slot.f1.micro : slot.f1.macro) = number();
    }
  }
  for (const auto& [f, s] : fractions) r.classification.push_back(s);
  return r;
}

namespace {

std::string join_hash(std::initializer_list<std::string_view> parts) {
  std::string buf;
  for (const auto p : parts) {
    buf += p;
    buf.push_back('\x1f');
  }
  return sha256_hex(buf);
}

/// Shared bookkeeping for both entry points.
class Runner {
 public:
  explicit Runner(const PipelineConfig& cfg)
      : cfg_(cfg), root_(cfg.out_dir), manifest_path_(root_ / "manifest.txt") {
    fs::create_directories(root_);
    manifest_ = Manifest::load(manifest_path_);
    format_ = cfg.binary ? EmbeddingFormat::Binary : EmbeddingFormat::Text;
    for (const auto& [k, v] : cfg.resolved()) {
      if (k.starts_with("train.") || k == "pipeline.seed" || k == "pipeline.threads") {
        train_params_ += k + "=" + v + ";";
      }
    }
  }

  const PipelineConfig& cfg() const { return cfg_; }
  const fs::path& root() const { return root_; }
  EmbeddingFormat format() const { return format_; }
  const std::string& train_params() const { return train_params_; }
  PipelineResult& result() { return result_; }

  template <typename F>
  auto guarded(const std::string& stage, F&& body) -> decltype(body()) {
    try {
      return body();
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(stage, e.what());
    }
  }

  bool reusable(const std::string& stage, const std::string& input_hash) const {
    return cfg_.resume && manifest_.up_to_date(stage, input_hash, root_);
  }

  void note(const std::string& stage, bool resumed, double seconds) {
    (resumed ? result_.resumed_stages : result_.computed_stages).push_back(stage);
    if (cfg_.verbose) {
      std::cerr << "[gpsp] " << stage << (resumed ? " resumed" : " done") << " (" << seconds
                << " s)\n";
    }
  }

  void commit(const std::string& stage, const std::string& input_hash,
              const std::vector<fs::path>& outputs) {
    Manifest::Stage s{stage, input_hash, {}};
    for (const auto& path : outputs) {
      s.outputs.push_back({fs::relative(path, root_).generic_string(), sha256_file(path)});
    }
    manifest_.record(std::move(s));
    manifest_.save(manifest_path_);
  }

  /// Runs `compute` unless the stage can be resumed, in which case `resume`
  /// loads its outputs. Both return the stage's value.
  template <typename Compute, typename Resume>
  auto stage(const std::string& name, const std::string& input_hash, Compute&& compute,
             Resume&& resume) {
    return guarded(name, [&] {
      const auto start = std::chrono::steady_clock::now();
      auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      };
      if (reusable(name, input_hash)) {
        auto value = resume();
        note(name, true, elapsed());
        return value;
      }
      std::vector<fs::path> outputs;
      auto value = compute(outputs);
      commit(name, input_hash, outputs);
      note(name, false, elapsed());
      return value;
    });
  }

  struct Loaded {
    HeterogeneousGraph graph;
    std::vector<Subnetwork> cells;
    eval::LabeledSet labels;
    std::string graph_hash;
    std::string labels_hash;
    std::string node_type;
  };

  /// Loads and partitions the input; the graph object must stay at a fixed
  /// address because subnetworks point into it.
  std::unique_ptr<Loaded> load() {
    auto loaded = std::make_unique<Loaded>();
    guarded("load", [&] {
      cfg_.validate();
      loaded->graph_hash = join_hash({sha256_file(cfg_.nodes), sha256_file(cfg_.edges)});
      loaded->labels_hash = sha256_file(cfg_.labels);
      loaded->graph = load_graph(cfg_.nodes, cfg_.edges);
      loaded->labels = eval::load_labels(cfg_.labels);
      loaded->node_type = labeled_node_type(cfg_, loaded->graph, loaded->labels);
      return 0;
    });
    guarded("partition", [&] {
      loaded->cells = partition(loaded->graph);
      if (cfg_.dump_partition) {
        const std::string name = "partition";
        const auto hash = join_hash({"partition", loaded->graph_hash});
        if (!reusable(name, hash)) {
          const auto dir = root_ / "partition";
          dump_partition(loaded->cells, dir);
          std::vector<fs::path> outputs;
          for (const auto& c : loaded->cells) outputs.push_back(dir / (c.label() + ".edges"));
          commit(name, hash, outputs);
        }
      }
      return 0;
    });
    return loaded;
  }

  struct Embedded {
    EmbeddingMatrix matrix;
    std::string file_hash;
  };

  Embedded embed(const Loaded& in, const Subnetwork& cell, Backend backend) {
    const auto name = "embed:" + std::string(to_string(backend)) + ":" + cell.label();
    const auto path = root_ / "embeddings" / std::string(to_string(backend)) / (cell.label() + ".emb");
    const auto hash = join_hash({"embed", in.graph_hash, cell.label(), to_string(backend), train_params_});
    auto train = cfg_.effective_train();
    if (cfg_.train.dim == 0) train.dim = backend == Backend::Line ? kLineDim : kDeepWalkDim;
    auto set_meta = [&](EmbeddingMatrix& m) {
      m.set_provenance(Provenance::Homogeneous);
      m.set_space_label(cell.label());
      m.set_node_type(cell.key().type_a);
    };
    return stage(
        name, hash,
        [&](std::vector<fs::path>& outputs) {
          auto trained = embed_homogeneous(cell, backend, train);
          save_embeddings(trained.embeddings, path, format_);
          outputs.push_back(path);
          set_meta(trained.embeddings);
          return Embedded{std::move(trained.embeddings), sha256_file(path)};
        },
        [&] {
          auto m = load_embeddings(path);
          set_meta(m);
          return Embedded{std::move(m), sha256_file(path)};
        });
  }

  eval::EvaluationReport evaluate(const Loaded& in, const std::string& method,
                                  const EmbeddingMatrix& embeddings, const std::string& embedding_hash) {
    const auto name = "eval:" + method;
    const auto report_path = root_ / (method + ".report.txt");
    const auto metrics_path = root_ / (method + ".metrics.kv");
    std::string eval_params;
    for (const auto& [k, v] : cfg_.resolved()) {
      if (k.starts_with("eval.") || k == "pipeline.seed") eval_params += k + "=" + v + ";";
    }
    const auto config = cfg_.resolved();
    std::string config_text;
    for (const auto& [k, v] : config) config_text += k + "=" + v + "\n";
    const auto hash = join_hash({"eval", method, embedding_hash, in.labels_hash, eval_params, config_text});
    result_.report_file = report_path;
    result_.metrics_file = metrics_path;
    return stage(
        name, hash,
        [&](std::vector<fs::path>& outputs) {
          auto report = eval::evaluate(embeddings, in.labels, cfg_.effective_eval(), method);
          report.config = config;
          {
            std::ofstream out(report_path);
            if (!out) throw Error("cannot write " + report_path.string());
            eval::write_report(report, out);
          }
          {
            std::ofstream out(metrics_path);
            if (!out) throw Error("cannot write " + metrics_path.string());
            eval::write_metrics(report, out);
          }
          outputs.push_back(report_path);
          outputs.push_back(metrics_path);
          return report;
        },
        [&] {
          std::ifstream in_metrics(metrics_path);
          auto report = read_metrics(in_metrics, metrics_path.string());
          report.config = config;
          return report;
        });
  }

 private:
  const PipelineConfig& cfg_;
  fs::path root_;
  fs::path manifest_path_;
  Manifest manifest_;
  EmbeddingFormat format_ = EmbeddingFormat::Text;
  std::string train_params_;
  PipelineResult result_;
};

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  Runner runner(cfg);
  const auto in = runner.load();
  const auto backend = cfg.backend;
  const auto backend_name = std::string(to_string(backend));

  // Homogeneous embeddings, keyed by node type.
  std::map<std::string, Runner::Embedded> homogeneous;
  for (const auto& cell : in->cells) {
    if (!cell.homogeneous()) continue;
    homogeneous.emplace(cell.key().type_a, runner.embed(*in, cell, backend));
  }

  // Projective embeddings, keyed by source node type.
  std::map<std::string, std::vector<Runner::Embedded>> projective;
  for (const auto& cell : in->cells) {
    if (cell.homogeneous()) continue;
    const auto& key = cell.key();
    for (const auto& [source, target] : {std::pair{key.type_a, key.type_b}, std::pair{key.type_b, key.type_a}}) {
      const auto target_it = homogeneous.find(target);
      if (target_it == homogeneous.end()) {
        if (cfg.verbose) {
          std::cerr << "[gpsp] no homogeneous embedding for " << target << "; skipping "
                    << projection_label(source, target) << '\n';
        }
        continue;
      }
      const auto label = projection_label(source, target);
      const auto name = "project:" + backend_name + ":" + label;
      const auto path = runner.root() / "projections" / backend_name / (label + ".proj.emb");
      std::string options = std::string(to_string(cfg.projection.missing)) +
                            (cfg.projection.normalize_by_weight_sum ? ":wsum" : ":count");
      const auto hash = join_hash({"project", in->graph_hash, label, target_it->second.file_hash, options});
      auto set_meta = [&](EmbeddingMatrix& m) {
        m.set_provenance(Provenance::Projective);
        m.set_space_label(label);
        m.set_node_type(source);
      };
      auto result = runner.stage(
          name, hash,
          [&](std::vector<fs::path>& outputs) {
            auto m = project(ProjectionSpec{cell, source, target, target_it->second.matrix, cfg.projection});
            save_embeddings(m, path, runner.format());
            outputs.push_back(path);
            return Runner::Embedded{std::move(m), sha256_file(path)};
          },
          [&] {
            auto m = load_embeddings(path);
            set_meta(m);
            return Runner::Embedded{std::move(m), sha256_file(path)};
          });
      projective[source].push_back(std::move(result));
    }
  }

  // Final embeddings for every type with a homogeneous base.
  std::string labeled_hash;
  const EmbeddingMatrix* labeled_final = nullptr;
  std::map<std::string, Runner::Embedded> finals;
  for (const auto& [type, base] : homogeneous) {
    CompositionPlan plan;
    plan.node_type = type;
    plan.parts.push_back(&base.matrix);
    std::string part_hashes = base.file_hash;
    for (const auto& p : projective[type]) {
      plan.parts.push_back(&p.matrix);
      part_hashes += ":" + p.file_hash;
    }
    plan.missing_policy = cfg.missing_policy;
    plan.l2_normalize_parts = cfg.l2_normalize;
    const auto name = "compose:" + backend_name + ":" + type;
    const auto path = runner.root() / "final" / backend_name / (type + ".final.emb");
    const auto parts_path = runner.root() / "final" / backend_name / (type + ".final.parts");
    const auto hash = join_hash({"compose", type, part_hashes, to_string(cfg.missing_policy),
                                 cfg.l2_normalize ? "l2" : "raw"});
    auto composed = runner.stage(
        name, hash,
        [&](std::vector<fs::path>& outputs) {
          auto c = concatenate(plan);
          save_embeddings(c.embeddings, path, runner.format());
          save_part_boundaries(c.parts, parts_path);
          outputs.push_back(path);
          outputs.push_back(parts_path);
          return Runner::Embedded{std::move(c.embeddings), sha256_file(path)};
        },
        [&] {
          auto m = load_embeddings(path, Provenance::Final, type, type);
          return Runner::Embedded{std::move(m), sha256_file(path)};
        });
    finals.emplace(type, std::move(composed));
  }

  const auto final_it = finals.find(in->node_type);
  if (final_it == finals.end()) {
    throw StageError("eval", "no final embedding for labeled node type '" + in->node_type +
                                 "' (it has no homogeneous subnetwork)");
  }
  labeled_final = &final_it->second.matrix;
  labeled_hash = final_it->second.file_hash;

  auto& result = runner.result();
  result.report = runner.evaluate(*in, method_name(backend, true), *labeled_final, labeled_hash);
  return std::move(result);
}

PipelineResult baseline_run(const PipelineConfig& cfg, Backend which) {
  Runner runner(cfg);
  const auto in = runner.load();
  const Subnetwork* cell = nullptr;
  runner.guarded("embed", [&] {
    cell = &subnetwork_of(in->cells, SubnetworkKey::homogeneous(in->node_type));
    return 0;
  });
  auto embedded = runner.embed(*in, *cell, which);
  auto& result = runner.result();
  result.report = runner.evaluate(*in, method_name(which, false), embedded.matrix, embedded.file_hash);
  return std::move(result);
}

}  // namespace gpsp
