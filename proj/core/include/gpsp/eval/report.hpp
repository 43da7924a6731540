#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpsp/eval/classifier.hpp"
#include "gpsp/eval/metrics.hpp"

namespace gpsp::eval {

struct EvalOptions {
  std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t clusters = 0;  // 0 = number of distinct labels
  std::size_t kmeans_iters = 300;
  std::size_t kmeans_restarts = 5;  // best inertia wins
  ClassifierOptions classifier{};
  std::uint64_t seed = 1;
  std::size_t threads = 1;  // fractions run in parallel; results do not depend on it
};

struct FractionScores {
  double fraction = 0.0;
  F1Scores f1{};
};

struct EvaluationReport {
  std::string method;
  std::vector<FractionScores> classification;
  double nmi = 0.0;
  std::size_t clusters = 0;
  std::uint64_t seed = 0;
  std::size_t matched_node_count = 0;
  std::size_t unmatched_label_count = 0;
  std::vector<std::string> warnings;
  /// Resolved configuration echoed verbatim.
  std::vector<std::pair<std::string, std::string>> config;
};

/// Classification sweep over options.fractions plus k-means/NMI against the
/// labels, on the labeled rows that have embeddings.
EvaluationReport evaluate(const EmbeddingMatrix& embeddings, const LabeledSet& labels,
                          const EvalOptions& options, std::string method);

/// Reference AMiner figures for the four methods this library can run.
struct ReferenceScores {
  std::string_view method;
  double micro[5];
  double macro[5];
  double nmi;
};
inline constexpr double kReferenceFractions[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
std::optional<ReferenceScores> reference_scores(std::string_view method);

/// Text table: one Micro-F1 and one Macro-F1 row over the fractions, one NMI
/// line, reference figures beside them when known, then the config echo.
void write_report(const EvaluationReport& report, std::ostream& out);
/// One `metric=value` per line.
void write_metrics(const EvaluationReport& report, std::ostream& out);

}  // namespace gpsp::eval
