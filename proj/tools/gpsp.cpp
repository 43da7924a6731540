// gpsp: command-line front end for the partition / embed / project /
// compose / evaluate pipeline.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <algorithm>
#include <map>
#include <set>
#include <optional>
#include <string>

#include "gpsp/compose.hpp"
#include "gpsp/config.hpp"
#include "gpsp/error.hpp"
#include "gpsp/eval/report.hpp"
#include "gpsp/graph.hpp"
#include "gpsp/partition.hpp"
#include "gpsp/pipeline.hpp"
#include "gpsp/projection.hpp"
#include "gpsp/synthgen.hpp"

namespace {

using gpsp::PipelineConfig;
namespace fs = std::filesystem;

/// Every configuration key as a flag of the same name. Values given on the
/// command line are applied on top of --config.
struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "configuration file (INI: [section] key = value)")
        ->check(CLI::ExistingFile);
    for (const auto& key : gpsp::config_keys()) {
      const std::string name(key.name);
      std::string hyphen = name;
      std::replace(hyphen.begin(), hyphen.end(), '_', '-');
      std::string spelling = "--" + name + (hyphen != name ? ",--" + hyphen : "");
      if (is_bool(name)) {
        spelling += ",!--no-" + hyphen;
        options[name] = app.add_flag(spelling, flags[name], std::string(key.help))->group("Configuration");
      } else {
        options[name] = app.add_option(spelling, values[name], std::string(key.help))->group("Configuration");
      }
    }
  }

  static bool is_bool(const std::string& name) {
    static const std::set<std::string> kBool = {"binary", "resume", "dump_partition", "verbose",
                                               "normalize_by_weight_sum", "l2_normalize"};
    return kBool.contains(name);
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!config_file.empty()) gpsp::merge_config(cfg, config_file);
    for (const auto& [name, opt] : options) {
      if (opt->count() == 0) continue;
      if (is_bool(name)) {
        cfg.set(name, flags.at(name) ? "true" : "false");
      } else {
        cfg.set(name, values.at(name));
      }
    }
    return cfg;
  }
};

template <typename F>
int tagged(const std::string& stage, F&& body) {
  try {
    body();
    return 0;
  } catch (const gpsp::StageError& e) {
    std::cerr << "gpsp: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "gpsp: stage '" << stage << "': " << e.what() << '\n';
  }
  return 1;
}

void print_report(const gpsp::PipelineResult& r) {
  gpsp::eval::write_report(r.report, std::cout);
  std::cout << "\nreport: " << r.report_file.string() << "\nmetrics: " << r.metrics_file.string() << '\n';
}

fs::path default_out(const PipelineConfig& cfg, const std::string& out, const fs::path& fallback) {
  return out.empty() ? cfg.out_dir / fallback : fs::path(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous network embedding by graph partition and space projection"};
  app.require_subcommand(1);
  app.fallthrough();
  ConfigFlags flags;
  flags.attach(app);

  auto* generate = app.add_subcommand("generate", "write a synthetic planted-community network");

  auto* part = app.add_subcommand("partition", "split a typed network into subnetworks");

  auto* embed = app.add_subcommand("embed", "embed one homogeneous subnetwork");
  std::string embed_type;
  std::string embed_out;
  embed->add_option("--node-type", embed_type, "node type of the homogeneous subnetwork")->required();
  embed->add_option("--out", embed_out, "output embedding file");

  auto* proj = app.add_subcommand("project", "project one side of a bipartite subnetwork");
  std::string proj_source, proj_target, proj_target_emb, proj_out;
  proj->add_option("--source", proj_source, "source node type")->required();
  proj->add_option("--target", proj_target, "target node type")->required();
  proj->add_option("--target-emb", proj_target_emb, "homogeneous embeddings of the target type")
      ->required()
      ->check(CLI::ExistingFile);
  proj->add_option("--out", proj_out, "output embedding file");

  auto* comp = app.add_subcommand("compose", "concatenate homogeneous and projective embeddings");
  std::string comp_type, comp_base, comp_out;
  std::vector<std::string> comp_parts;
  comp->add_option("--node-type", comp_type, "node type of the final embedding")->required();
  comp->add_option("--homogeneous", comp_base, "homogeneous embedding file")->required()->check(CLI::ExistingFile);
  comp->add_option("--projective", comp_parts, "projective embedding files (label = file stem)")
      ->check(CLI::ExistingFile);
  comp->add_option("--out", comp_out, "output embedding file (part boundaries go to <out>.parts)");

  auto* ev = app.add_subcommand("eval", "classification sweep and clustering NMI");
  std::string ev_emb, ev_method = "embedding";
  ev->add_option("--embeddings", ev_emb, "embedding file")->required()->check(CLI::ExistingFile);
  ev->add_option("--method", ev_method, "model name for the report (e.g. GPSP-DeepWalk)");

  auto* run = app.add_subcommand("run", "full pipeline");

  auto* base = app.add_subcommand("baseline", "embed only the labeled type's homogeneous subnetwork");
  std::string which;
  base->add_option("--which", which, "deepwalk or line (default: --backend)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  PipelineConfig cfg;
  if (int rc = tagged("config", [&] { cfg = flags.resolve(); }); rc != 0) return rc;
  const auto format = cfg.binary ? gpsp::EmbeddingFormat::Binary : gpsp::EmbeddingFormat::Text;

  if (generate->parsed()) {
    return tagged("generate", [&] {
      auto synth = cfg.synth;
      synth.seed = cfg.seed;
      const auto net = gpsp::generate(synth);
      gpsp::write_synth(net, cfg.out_dir);
      std::cout << "wrote " << net.graph.node_count() << " nodes, " << net.graph.edge_count()
                << " edges, " << net.author_labels.pairs.size() << " labels to "
                << cfg.out_dir.string() << '\n';
    });
  }

  if (part->parsed()) {
    return tagged("partition", [&] {
      cfg.validate(false);
      const auto graph = gpsp::load_graph(cfg.nodes, cfg.edges);
      const auto cells = gpsp::partition(graph);
      const auto dir = cfg.out_dir / "partition";
      gpsp::dump_partition(cells, dir);
      for (const auto& c : cells) {
        std::cout << (c.homogeneous() ? "Homogeneous(" + c.key().type_a + ")"
                                      : "Bipartite(" + c.key().type_a + "," + c.key().type_b + ")")
                  << "\tnodes=" << c.node_count() << "\tedges=" << c.edges().size() << "\tedge_types=";
        bool first = true;
        for (const auto& t : c.edge_types()) {
          std::cout << (first ? "" : ",") << t;
          first = false;
        }
        std::cout << "\tfile=" << (dir / (c.label() + ".edges")).string() << '\n';
      }
    });
  }

  if (embed->parsed()) {
    return tagged("embed", [&] {
      cfg.validate(false);
      const auto graph = gpsp::load_graph(cfg.nodes, cfg.edges);
      const auto cells = gpsp::partition(graph);
      const auto& cell = gpsp::subnetwork_of(cells, gpsp::SubnetworkKey::homogeneous(embed_type));
      const auto trained = gpsp::embed_homogeneous(cell, cfg.backend, cfg.effective_train());
      const auto out = default_out(cfg, embed_out, cell.label() + ".emb");
      gpsp::save_embeddings(trained.embeddings, out, format);
      std::cout << "wrote " << trained.embeddings.size() << " x " << trained.embeddings.dim()
                << " to " << out.string() << "\nepoch losses:";
      for (const double l : trained.epoch_losses) std::cout << ' ' << l;
      std::cout << '\n';
    });
  }

  if (proj->parsed()) {
    return tagged("project", [&] {
      cfg.validate(false);
      const auto graph = gpsp::load_graph(cfg.nodes, cfg.edges);
      const auto cells = gpsp::partition(graph);
      const auto& cell = gpsp::subnetwork_of(cells, gpsp::SubnetworkKey::bipartite(proj_source, proj_target));
      const auto target = gpsp::load_embeddings(proj_target_emb, gpsp::Provenance::Homogeneous,
                                                gpsp::SubnetworkKey::homogeneous(proj_target).label(),
                                                proj_target);
      const auto m = gpsp::project({cell, proj_source, proj_target, target, cfg.projection});
      const auto out = default_out(cfg, proj_out, gpsp::projection_label(proj_source, proj_target) + ".proj.emb");
      gpsp::save_embeddings(m, out, format);
      std::cout << "wrote " << m.size() << " x " << m.dim() << " to " << out.string() << '\n';
    });
  }

  if (comp->parsed()) {
    return tagged("compose", [&] {
      auto stem = [](const fs::path& p) {
        auto name = p.filename().string();
        for (const char* ext : {".proj.emb", ".emb"}) {
          const std::string e(ext);
          if (name.size() > e.size() && name.ends_with(e)) return name.substr(0, name.size() - e.size());
        }
        return p.stem().string();
      };
      std::vector<gpsp::EmbeddingMatrix> parts;
      parts.push_back(gpsp::load_embeddings(comp_base, gpsp::Provenance::Homogeneous, stem(comp_base), comp_type));
      for (const auto& p : comp_parts) {
        parts.push_back(gpsp::load_embeddings(p, gpsp::Provenance::Projective, stem(p), comp_type));
      }
      gpsp::CompositionPlan plan;
      plan.node_type = comp_type;
      for (const auto& p : parts) plan.parts.push_back(&p);
      plan.missing_policy = cfg.missing_policy;
      plan.l2_normalize_parts = cfg.l2_normalize;
      const auto c = gpsp::concatenate(plan);
      const auto out = default_out(cfg, comp_out, comp_type + ".final.emb");
      gpsp::save_embeddings(c.embeddings, out, format);
      gpsp::save_part_boundaries(c.parts, out.string() + ".parts");
      std::cout << "wrote " << c.embeddings.size() << " x " << c.embeddings.dim() << " to " << out.string() << '\n';
      gpsp::write_part_boundaries(c.parts, std::cout);
    });
  }

  if (ev->parsed()) {
    return tagged("eval", [&] {
      if (cfg.labels.empty()) throw gpsp::InvalidArgument("--labels is required");
      const auto emb = gpsp::load_embeddings(ev_emb);
      const auto labels = gpsp::eval::load_labels(cfg.labels);
      auto report = gpsp::eval::evaluate(emb, labels, cfg.effective_eval(), ev_method);
      report.config = cfg.resolved();
      fs::create_directories(cfg.out_dir);
      std::ofstream txt(cfg.out_dir / (ev_method + ".report.txt"));
      gpsp::eval::write_report(report, txt);
      std::ofstream kv(cfg.out_dir / (ev_method + ".metrics.kv"));
      gpsp::eval::write_metrics(report, kv);
      gpsp::eval::write_report(report, std::cout);
    });
  }

  if (run->parsed()) {
    return tagged("run", [&] { print_report(gpsp::run_pipeline(cfg)); });
  }

  if (base->parsed()) {
    return tagged("baseline", [&] {
      const auto backend = which.empty() ? cfg.backend : gpsp::parse_backend(which);
      print_report(gpsp::baseline_run(cfg, backend));
    });
  }
  return 0;
}
