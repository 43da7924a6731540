#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpsp/compose.hpp"
#include "gpsp/eval/report.hpp"
#include "gpsp/projection.hpp"
#include "gpsp/synthgen.hpp"
#include "gpsp/train_config.hpp"

namespace gpsp {

enum class Backend { DeepWalk, Line };

std::string_view to_string(Backend b);
Backend parse_backend(std::string_view text);

/// "GPSP-DeepWalk" / "GPSP-LINE", or the plain baseline names.
std::string method_name(Backend b, bool gpsp);

/// Everything one pipeline run needs. Loaded from an INI-style file
/// (`key = value` lines under `[section]` headers); every key can also be set
/// by name, which is how command-line flags override the file.
struct PipelineConfig {
  // [input]
  std::filesystem::path nodes;
  std::filesystem::path edges;
  std::filesystem::path labels;
  // [pipeline]
  Backend backend = Backend::DeepWalk;
  std::filesystem::path out_dir = "gpsp-out";
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool binary = false;
  bool resume = true;
  bool dump_partition = false;
  bool verbose = false;
  // [train]; dim 0 picks 128 for deepwalk and 256 for line
  TrainConfig train{};
  // [projection]
  // Skip by default here: isolated target nodes have no homogeneous vector.
  ProjectionOptions projection{MissingNeighborPolicy::Skip, false};
  // [compose]
  MissingPolicy missing_policy = MissingPolicy::ZeroFill;
  bool l2_normalize = false;
  // [eval]
  std::string node_type;  // empty: inferred from the labeled ids
  eval::EvalOptions eval{};
  // [synth]
  SynthConfig synth{};

  PipelineConfig();

  /// Sets `section.key` (or bare `key`) from text. Throws InvalidArgument.
  void set(std::string_view key, std::string_view value);

  /// TrainConfig with dim, seed and threads resolved.
  TrainConfig effective_train() const;
  eval::EvalOptions effective_eval() const;

  /// Every key as `section.key` with its resolved value, in registry order.
  std::vector<std::pair<std::string, std::string>> resolved() const;

  /// Input files exist and options are consistent. Throws InvalidArgument.
  void validate(bool require_labels = true) const;
};

struct ConfigKey {
  std::string_view section;
  std::string_view name;
  std::string_view help;
};

/// All recognized keys. Key names are unique across sections.
const std::vector<ConfigKey>& config_keys();

PipelineConfig read_config(std::istream& in, const std::string& source = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);
/// Applies a file on top of an existing configuration.
void merge_config(PipelineConfig& cfg, const std::filesystem::path& path);
void write_config(const PipelineConfig& cfg, std::ostream& out);

}  // namespace gpsp
