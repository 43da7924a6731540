#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gpsp/config.hpp"
#include "gpsp/error.hpp"
#include "gpsp/eval/report.hpp"
#include "gpsp/partition.hpp"
#include "gpsp/skipgram.hpp"

namespace gpsp {

/// Failure inside one pipeline stage; what() reads "stage '<name>': <cause>".
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error("stage '" + stage + "': " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct PipelineResult {
  eval::EvaluationReport report;
  std::filesystem::path report_file;
  std::filesystem::path metrics_file;
  std::vector<std::string> computed_stages;
  std::vector<std::string> resumed_stages;
};

/// DeepWalk (walks + skip-gram) or LINE on one homogeneous subnetwork.
TrainResult embed_homogeneous(const Subnetwork& subnet, Backend backend, const TrainConfig& cfg);

/// load -> partition -> embed every homogeneous subnetwork -> project both
/// directions of every bipartite subnetwork -> concatenate per node type ->
/// evaluate the labeled type. Every artifact goes under cfg.out_dir and is
/// listed with its content hash in manifest.txt; with cfg.resume, stages
/// whose input hash is unchanged are loaded instead of recomputed.
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// Embeds only the labeled type's homogeneous subnetwork with `which` and
/// evaluates it exactly as run_pipeline does.
PipelineResult baseline_run(const PipelineConfig& cfg, Backend which);

/// Parses a metrics file written by eval::write_metrics.
eval::EvaluationReport read_metrics(std::istream& in, const std::string& source = "<metrics>");

/// The labeled node type: cfg.node_type, else the single type of the labeled
/// ids present in the graph.
std::string labeled_node_type(const PipelineConfig& cfg, const HeterogeneousGraph& graph,
                              const eval::LabeledSet& labels);

}  // namespace gpsp
